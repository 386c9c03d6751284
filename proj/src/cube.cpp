#include <sopals/cube.hpp>

#include <fmt/format.h>

#include <limits>

namespace sopals
{

namespace
{

int position_rank( cube const& c, std::uint64_t bit ) noexcept
{
  if ( ( c.care & bit ) == 0 )
  {
    return 0;
  }
  return ( c.value & bit ) ? 2 : 1;
}

} // namespace

std::strong_ordering compare_patterns( cube const& a, cube const& b ) noexcept
{
  std::uint64_t const differ = ( a.care ^ b.care ) | ( a.care & b.care & ( a.value ^ b.value ) );
  if ( differ != 0 )
  {
    std::uint64_t const bit = std::uint64_t{ 1 } << ( 63 - std::countl_zero( differ ) );
    return position_rank( a, bit ) <=> position_rank( b, bit );
  }
  std::uint64_t const out_differ = a.outputs ^ b.outputs;
  if ( out_differ == 0 )
  {
    return std::strong_ordering::equal;
  }
  std::uint64_t const bit = out_differ & ( ~out_differ + 1 );
  return ( a.outputs & bit ) ? std::strong_ordering::greater : std::strong_ordering::less;
}

int literal_count( cube const& c, literal_counting counting ) noexcept
{
  int lits = c.input_literals();
  if ( counting == literal_counting::inputs_and_outputs )
  {
    lits += c.output_literals();
  }
  return lits;
}

cube parse_cube( std::string_view text, int num_inputs, int num_outputs )
{
  std::string compact;
  for ( char ch : text )
  {
    if ( ch != ' ' && ch != '\t' && ch != '|' )
    {
      compact.push_back( ch );
    }
  }
  if ( static_cast<int>( compact.size() ) != num_inputs + num_outputs )
  {
    throw error( fmt::format( "cube '{}' has {} positions, expected {}", text, compact.size(), num_inputs + num_outputs ) );
  }
  cube c;
  for ( int i = 0; i < num_inputs; ++i )
  {
    auto const bit = input_bit( num_inputs, i );
    switch ( compact[i] )
    {
    case '0':
      c.care |= bit;
      break;
    case '1':
      c.care |= bit;
      c.value |= bit;
      break;
    case '-':
      break;
    default:
      throw error( fmt::format( "illegal input character '{}' in cube '{}'", compact[i], text ) );
    }
  }
  for ( int j = 0; j < num_outputs; ++j )
  {
    switch ( compact[num_inputs + j] )
    {
    case '1':
      c.outputs |= std::uint64_t{ 1 } << j;
      break;
    case '0':
      break;
    default:
      throw error( fmt::format( "illegal output character '{}' in cube '{}'", compact[num_inputs + j], text ) );
    }
  }
  return c;
}

std::string input_string( cube const& c, int num_inputs )
{
  std::string s( static_cast<std::size_t>( num_inputs ), '-' );
  for ( int i = 0; i < num_inputs; ++i )
  {
    auto const bit = input_bit( num_inputs, i );
    if ( c.care & bit )
    {
      s[i] = ( c.value & bit ) ? '1' : '0';
    }
  }
  return s;
}

std::string output_string( cube const& c, int num_outputs )
{
  std::string s( static_cast<std::size_t>( num_outputs ), '0' );
  for ( int j = 0; j < num_outputs; ++j )
  {
    if ( c.asserts( static_cast<std::uint32_t>( j ) ) )
    {
      s[j] = '1';
    }
  }
  return s;
}

std::string to_string( cube const& c, int num_inputs, int num_outputs )
{
  return input_string( c, num_inputs ) + "|" + output_string( c, num_outputs );
}

std::string assignment_string( std::uint64_t assignment, int num_inputs )
{
  std::string s( static_cast<std::size_t>( num_inputs ), '0' );
  for ( int i = 0; i < num_inputs; ++i )
  {
    if ( assignment & input_bit( num_inputs, i ) )
    {
      s[i] = '1';
    }
  }
  return s;
}

std::vector<cube> expansions( cube const& c, int num_inputs )
{
  std::vector<cube> result;
  result.reserve( static_cast<std::size_t>( c.input_literals() ) );
  for ( int i = 0; i < num_inputs; ++i )
  {
    auto const bit = input_bit( num_inputs, i );
    if ( c.care & bit )
    {
      cube x = c;
      x.care &= ~bit;
      x.value &= ~bit;
      result.push_back( x );
    }
  }
  return result;
}

std::vector<minterm> covered_minterms( cube const& c, int num_inputs )
{
  std::vector<minterm> result;
  for_each_minterm( c, num_inputs, [&]( minterm const& t ) { result.push_back( t ); } );
  return result;
}

std::uint64_t minterm_count( cube const& c, int num_inputs ) noexcept
{
  int const free = c.free_inputs( num_inputs );
  auto const outs = static_cast<std::uint64_t>( c.output_literals() );
  if ( outs == 0 )
  {
    return 0;
  }
  if ( free >= 64 || ( free > 0 && outs > ( std::numeric_limits<std::uint64_t>::max() >> free ) ) )
  {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return outs << free;
}

} // namespace sopals

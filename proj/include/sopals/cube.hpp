/*!
  \file cube.hpp
  \brief Multi-output cubes over at most 64 inputs and 64 outputs.

  Input i of an n-input function is stored at bit (n - 1 - i) of the care and
  value masks, so an input assignment printed as a 0/1 string reads like the
  binary number it is stored as. Output j is stored at bit j of the output mask.
*/

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sopals
{

inline constexpr int max_inputs = 64;
inline constexpr int max_outputs = 64;

class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Which literals count towards the cost of a cube. */
enum class literal_counting
{
  inputs_and_outputs,
  inputs_only
};

/*! \brief One (input assignment, output index) pair of the ON-set. */
struct minterm
{
  std::uint64_t input{};
  std::uint32_t output{};

  friend auto operator<=>( minterm const&, minterm const& ) = default;
};

struct cube
{
  std::uint64_t care{};    // bit set: the input appears as a literal
  std::uint64_t value{};   // literal polarity; zero wherever care is zero
  std::uint64_t outputs{}; // asserted outputs

  friend bool operator==( cube const&, cube const& ) = default;

  int input_literals() const noexcept { return std::popcount( care ); }
  int output_literals() const noexcept { return std::popcount( outputs ); }
  int free_inputs( int num_inputs ) const noexcept { return num_inputs - input_literals(); }

  bool matches( std::uint64_t assignment ) const noexcept { return ( assignment & care ) == value; }
  bool asserts( std::uint32_t output ) const noexcept { return ( outputs >> output ) & 1u; }
  bool covers( minterm const& t ) const noexcept { return matches( t.input ) && asserts( t.output ); }

  /*! \brief Every minterm of `other` is a minterm of this cube. */
  bool contains( cube const& other ) const noexcept
  {
    return ( care & ~other.care ) == 0 && ( other.value & care ) == value && ( outputs & ~other.outputs ) == 0;
  }

  /*! \brief The input parts share at least one assignment. */
  bool inputs_intersect( cube const& other ) const noexcept
  {
    return ( ( value ^ other.value ) & care & other.care ) == 0;
  }

  bool intersects( cube const& other ) const noexcept
  {
    return ( outputs & other.outputs ) != 0 && inputs_intersect( other );
  }
};

/*! \brief Pattern order: position by position from input 0, with '-' < '0' < '1',
    then outputs from output 0 with '0' < '1'. Matches ASCII order of the PLA line. */
std::strong_ordering compare_patterns( cube const& a, cube const& b ) noexcept;

struct pattern_less
{
  bool operator()( cube const& a, cube const& b ) const noexcept { return compare_patterns( a, b ) < 0; }
};

struct cube_hash
{
  std::size_t operator()( cube const& c ) const noexcept
  {
    std::uint64_t h = c.care * 0x9E3779B97F4A7C15ull;
    h ^= ( c.value + 0x632BE59BD9B4E019ull ) * 0xBF58476D1CE4E5B9ull;
    h ^= ( c.outputs + 0x94D049BB133111EBull ) * 0xD6E8FEB86659FD93ull;
    return static_cast<std::size_t>( h ^ ( h >> 31 ) );
  }
};

int literal_count( cube const& c, literal_counting counting = literal_counting::inputs_and_outputs ) noexcept;

/*! \brief Parses "-10|1" or "-10 1" style text (inputs, separator, outputs). */
cube parse_cube( std::string_view text, int num_inputs, int num_outputs );

std::string input_string( cube const& c, int num_inputs );
std::string output_string( cube const& c, int num_outputs );
/*! \brief "-10|1" */
std::string to_string( cube const& c, int num_inputs, int num_outputs );
std::string assignment_string( std::uint64_t assignment, int num_inputs );

inline std::uint64_t input_mask( int num_inputs ) noexcept
{
  return num_inputs >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << num_inputs ) - 1u;
}

inline std::uint64_t input_bit( int num_inputs, int index ) noexcept
{
  return std::uint64_t{ 1 } << ( num_inputs - 1 - index );
}

/*! \brief One cube per input literal, with that literal dropped; ordered by input position. */
std::vector<cube> expansions( cube const& c, int num_inputs );

/*! \brief Calls fn(assignment) for every input assignment matched by c, in increasing order. */
template<class Fn>
void for_each_assignment( cube const& c, int num_inputs, Fn&& fn )
{
  std::uint64_t const free = input_mask( num_inputs ) & ~c.care;
  std::uint64_t sub = 0;
  do
  {
    fn( c.value | sub );
    sub = ( sub - free ) & free;
  } while ( sub != 0 );
}

/*! \brief Like for_each_assignment, but stops as soon as fn returns false.
    Returns false if it stopped early. */
template<class Fn>
bool for_each_assignment_until( cube const& c, int num_inputs, Fn&& fn )
{
  std::uint64_t const free = input_mask( num_inputs ) & ~c.care;
  std::uint64_t sub = 0;
  do
  {
    if ( !fn( c.value | sub ) )
    {
      return false;
    }
    sub = ( sub - free ) & free;
  } while ( sub != 0 );
  return true;
}

template<class Fn>
void for_each_output( std::uint64_t outputs, Fn&& fn )
{
  while ( outputs != 0 )
  {
    fn( static_cast<std::uint32_t>( std::countr_zero( outputs ) ) );
    outputs &= outputs - 1;
  }
}

/*! \brief Calls fn(minterm) for every minterm of c. */
template<class Fn>
void for_each_minterm( cube const& c, int num_inputs, Fn&& fn )
{
  for_each_assignment( c, num_inputs, [&]( std::uint64_t v ) {
    for_each_output( c.outputs, [&]( std::uint32_t o ) { fn( minterm{ v, o } ); } );
  } );
}

std::vector<minterm> covered_minterms( cube const& c, int num_inputs );

/*! \brief 2^(free inputs) * (asserted outputs), saturating at UINT64_MAX. */
std::uint64_t minterm_count( cube const& c, int num_inputs ) noexcept;

/*! \brief Output vector of a cube list at one input assignment. */
inline std::uint64_t evaluate( std::span<cube const> cubes, std::uint64_t assignment ) noexcept
{
  std::uint64_t out = 0;
  for ( auto const& c : cubes )
  {
    if ( c.matches( assignment ) )
    {
      out |= c.outputs;
    }
  }
  return out;
}

} // namespace sopals

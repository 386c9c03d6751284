#include <sopals/error_model.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sopals
{

int max_threads() noexcept
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

bool eic_contains( eic_set const& s, std::uint64_t assignment ) noexcept
{
  return std::binary_search( s.begin(), s.end(), assignment );
}

eic_set eic_union( eic_set const& a, eic_set const& b )
{
  eic_set result;
  result.reserve( a.size() + b.size() );
  std::set_union( a.begin(), a.end(), b.begin(), b.end(), std::back_inserter( result ) );
  return result;
}

eic_set eic_difference( eic_set const& a, eic_set const& b )
{
  eic_set result;
  std::set_difference( a.begin(), a.end(), b.begin(), b.end(), std::back_inserter( result ) );
  return result;
}

bool eic_disjoint( eic_set const& a, eic_set const& b ) noexcept
{
  auto i = a.begin();
  auto j = b.begin();
  while ( i != a.end() && j != b.end() )
  {
    if ( *i == *j )
    {
      return false;
    }
    *i < *j ? ++i : ++j;
  }
  return true;
}

assignment_set::assignment_set( int num_inputs )
    : words_( std::max<std::size_t>( 1, ( std::size_t{ 1 } << num_inputs ) / 64 ), 0 )
{
  if ( num_inputs > max_cover_inputs )
  {
    throw error( fmt::format( "assignment sets support at most {} inputs", max_cover_inputs ) );
  }
}

assignment_set::assignment_set( int num_inputs, eic_set const& members ) : assignment_set( num_inputs )
{
  for ( auto v : members )
  {
    insert( v );
  }
}

void assignment_set::insert( std::uint64_t v ) noexcept
{
  auto& w = words_[v >> 6];
  auto const bit = std::uint64_t{ 1 } << ( v & 63u );
  if ( !( w & bit ) )
  {
    w |= bit;
    ++size_;
  }
}

void assignment_set::erase( std::uint64_t v ) noexcept
{
  auto& w = words_[v >> 6];
  auto const bit = std::uint64_t{ 1 } << ( v & 63u );
  if ( w & bit )
  {
    w &= ~bit;
    --size_;
  }
}

eic_set assignment_set::members() const
{
  eic_set result;
  result.reserve( size_ );
  for ( std::size_t k = 0; k < words_.size(); ++k )
  {
    auto w = words_[k];
    while ( w != 0 )
    {
      result.push_back( k * 64 + static_cast<std::uint64_t>( std::countr_zero( w ) ) );
      w &= w - 1;
    }
  }
  return result;
}

std::uint64_t noe_from_er( double er, int num_inputs )
{
  if ( !( er >= 0.0 && er <= 1.0 ) )
  {
    throw error( fmt::format( "error rate {} is outside [0, 1]", er ) );
  }
  if ( num_inputs < 0 || num_inputs > 63 )
  {
    throw error( fmt::format( "cannot scale an error rate over {} inputs", num_inputs ) );
  }
  long double const scaled = static_cast<long double>( er ) * std::ldexp( 1.0L, num_inputs );
  return static_cast<std::uint64_t>( std::floor( scaled ) );
}

namespace
{

void check_exhaustive( int num_inputs )
{
  if ( num_inputs > max_exhaustive_inputs )
  {
    throw error( fmt::format( "exhaustive evaluation supports at most {} inputs; use sampling", max_exhaustive_inputs ) );
  }
}

void add_flips( std::uint64_t diff, std::vector<std::uint64_t>& flips )
{
  for_each_output( diff, [&]( std::uint32_t o ) { ++flips[o]; } );
}

} // namespace

error_measure exhaustive_error_rate_reference( std::span<cube const> original, std::span<cube const> approx,
                                               int num_inputs, int num_outputs )
{
  check_exhaustive( num_inputs );
  error_measure result;
  result.output_flips.assign( static_cast<std::size_t>( num_outputs ), 0 );
  std::uint64_t const total = std::uint64_t{ 1 } << num_inputs;
  for ( std::uint64_t v = 0; v < total; ++v )
  {
    auto const diff = evaluate( original, v ) ^ evaluate( approx, v );
    if ( diff != 0 )
    {
      ++result.eic_count;
      add_flips( diff, result.output_flips );
    }
  }
  result.er = static_cast<double>( result.eic_count ) / static_cast<double>( total );
  return result;
}

namespace
{

/* Assignments are processed in blocks that share their high bits; only cubes
   compatible with a block's prefix are evaluated inside it. */
constexpr int block_bits = 10;

void filter_block( std::span<cube const> cubes, std::uint64_t prefix, std::uint64_t high_mask, std::vector<cube>& out )
{
  out.clear();
  for ( auto const& c : cubes )
  {
    if ( ( ( prefix ^ c.value ) & c.care & high_mask ) == 0 )
    {
      out.push_back( c );
    }
  }
}

} // namespace

error_measure exhaustive_error_rate( std::span<cube const> original, std::span<cube const> approx, int num_inputs,
                                     int num_outputs, execution policy )
{
  if ( policy == execution::serial )
  {
    return exhaustive_error_rate_reference( original, approx, num_inputs, num_outputs );
  }
  check_exhaustive( num_inputs );

  int const low_bits = std::min( num_inputs, block_bits );
  std::uint64_t const low_count = std::uint64_t{ 1 } << low_bits;
  std::uint64_t const high_mask = input_mask( num_inputs ) & ~( low_count - 1 );
  auto const blocks = static_cast<std::int64_t>( std::uint64_t{ 1 } << ( num_inputs - low_bits ) );

  error_measure result;
  result.output_flips.assign( static_cast<std::size_t>( num_outputs ), 0 );

#pragma omp parallel
  {
    std::uint64_t count = 0;
    std::vector<std::uint64_t> flips( static_cast<std::size_t>( num_outputs ), 0 );
    std::vector<cube> fo;
    std::vector<cube> fa;

#pragma omp for schedule( dynamic, 1 ) nowait
    for ( std::int64_t b = 0; b < blocks; ++b )
    {
      std::uint64_t const prefix = static_cast<std::uint64_t>( b ) << low_bits;
      filter_block( original, prefix, high_mask, fo );
      filter_block( approx, prefix, high_mask, fa );
      for ( std::uint64_t low = 0; low < low_count; ++low )
      {
        auto const v = prefix | low;
        auto const diff = evaluate( fo, v ) ^ evaluate( fa, v );
        if ( diff != 0 )
        {
          ++count;
          add_flips( diff, flips );
        }
      }
    }

#pragma omp critical( sopals_exhaustive_merge )
    {
      result.eic_count += count;
      for ( std::size_t o = 0; o < flips.size(); ++o )
      {
        result.output_flips[o] += flips[o];
      }
    }
  }

  result.er = static_cast<double>( result.eic_count ) / std::ldexp( 1.0, num_inputs );
  return result;
}

error_measure exhaustive_error_rate( cover const& original, cover const& approx, execution policy )
{
  if ( original.num_inputs() != approx.num_inputs() || original.num_outputs() != approx.num_outputs() )
  {
    throw error( "covers have different dimensions" );
  }
  auto const a = original.cubes();
  auto const b = approx.cubes();
  return exhaustive_error_rate( a, b, original.num_inputs(), original.num_outputs(), policy );
}

eic_set erroneous_inputs( std::span<cube const> original, std::span<cube const> approx, int num_inputs )
{
  check_exhaustive( num_inputs );
  eic_set result;
  std::uint64_t const total = std::uint64_t{ 1 } << num_inputs;
  for ( std::uint64_t v = 0; v < total; ++v )
  {
    if ( evaluate( original, v ) != evaluate( approx, v ) )
    {
      result.push_back( v );
    }
  }
  return result;
}

sampled_error sampled_error_rate( std::span<cube const> original, std::span<cube const> approx, int num_inputs,
                                  std::uint64_t samples, std::uint64_t seed )
{
  if ( samples == 0 )
  {
    throw error( "sampling needs at least one sample" );
  }
  sampled_error result;
  if ( num_inputs < 64 && samples >= ( std::uint64_t{ 1 } << num_inputs ) )
  {
    std::uint64_t const total = std::uint64_t{ 1 } << num_inputs;
    for ( std::uint64_t v = 0; v < total; ++v )
    {
      result.errors += evaluate( original, v ) != evaluate( approx, v ) ? 1u : 0u;
    }
    result.samples = total;
    result.er = static_cast<double>( result.errors ) / static_cast<double>( total );
    result.lower = result.upper = result.er;
    result.exhaustive = true;
    return result;
  }

  std::mt19937_64 rng( seed );
  auto const mask = input_mask( num_inputs );
  for ( std::uint64_t k = 0; k < samples; ++k )
  {
    auto const v = rng() & mask;
    result.errors += evaluate( original, v ) != evaluate( approx, v ) ? 1u : 0u;
  }
  result.samples = samples;
  double const n = static_cast<double>( samples );
  double const p = static_cast<double>( result.errors ) / n;
  double const z = 1.959963984540054;
  double const z2 = z * z;
  double const denom = 1.0 + z2 / n;
  double const center = ( p + z2 / ( 2.0 * n ) ) / denom;
  double const half = z * std::sqrt( p * ( 1.0 - p ) / n + z2 / ( 4.0 * n * n ) ) / denom;
  result.er = p;
  result.lower = std::max( 0.0, center - half );
  result.upper = std::min( 1.0, center + half );
  return result;
}

eic_set cube_insertion_eics( cube const& c, cover const& f, eic_set const& existing )
{
  eic_set result;
  for_each_assignment( c, f.num_inputs(), [&]( std::uint64_t v ) {
    if ( eic_contains( existing, v ) )
    {
      return;
    }
    bool uncovered = false;
    for_each_output( c.outputs, [&]( std::uint32_t o ) { uncovered |= f.cover_count( v, o ) == 0; } );
    if ( uncovered )
    {
      result.push_back( v );
    }
  } );
  return result;
}

} // namespace sopals

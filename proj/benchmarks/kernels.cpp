// Serial reference kernels against their OpenMP versions.
#include <sopals/cover.hpp>
#include <sopals/cube_insertion.hpp>
#include <sopals/error_model.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace sopals;

namespace
{

cover random_cover( int n, int m, int cubes, std::uint64_t seed )
{
  std::mt19937_64 rng( seed );
  cover f( n, m );
  while ( static_cast<int>( f.size() ) < cubes )
  {
    cube c;
    for ( int i = 0; i < n; ++i )
    {
      if ( rng() % 10 < 6 )
      {
        auto const bit = input_bit( n, i );
        c.care |= bit;
        c.value |= rng() % 2 ? bit : 0u;
      }
    }
    c.outputs = ( rng() % ( ( std::uint64_t{ 1 } << m ) - 1 ) ) + 1;
    if ( !f.contains( c ) )
    {
      f.insert( c );
    }
  }
  return f;
}

execution policy_of( benchmark::State const& state )
{
  return state.range( 1 ) != 0 ? execution::parallel : execution::serial;
}

void error_rate( benchmark::State& state )
{
  int const n = static_cast<int>( state.range( 0 ) );
  auto const f = random_cover( n, 4, 4 * n, 1 );
  auto g = f;
  auto const ids = g.ids();
  g.remove( ids.front() );
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize( exhaustive_error_rate( f, g, policy_of( state ) ) );
  }
}

void trees( benchmark::State& state )
{
  int const n = static_cast<int>( state.range( 0 ) );
  auto const f = random_cover( n, 3, 3 * n, 2 );
  for ( auto _ : state )
  {
    benchmark::DoNotOptimize( generate_scts( f, 2, {}, policy_of( state ) ) );
  }
}

} // namespace

// second argument: 0 serial, 1 parallel
BENCHMARK( error_rate )->ArgsProduct( { { 12, 16, 20 }, { 0, 1 } } )->Unit( benchmark::kMillisecond );
BENCHMARK( trees )->ArgsProduct( { { 10, 14, 16 }, { 0, 1 } } )->Unit( benchmark::kMillisecond );

BENCHMARK_MAIN();

#include "helpers.hpp"

#include <sopals/engine.hpp>
#include <sopals/error_model.hpp>

#include <doctest.h>

#include <random>

using namespace sopals;
using namespace testing;

namespace
{

engine_options internal_only()
{
  engine_options o;
  o.minimizer.allow_external = false;
  return o;
}

} // namespace

TEST_CASE( "modify and restore" )
{
  auto f = cover_of( f0, 3, 1 );
  auto const original = f;

  auto change = modify_sop( f, solution{} );
  CHECK( f.identical( original ) );
  restore_sop( f, change );
  CHECK( f.identical( original ) );

  solution const drop{ {}, cubes_of( { "-10|1" } ), 3, assignments( { "010", "110" } ) };
  change = modify_sop( f, drop );
  CHECK( patterns_of( f ) == std::vector<std::string>{ "1-1|1" } );
  restore_sop( f, change );
  CHECK( f.identical( original ) );

  solution const swap{ cubes_of( { "-1-|1" } ), cubes_of( { "-10|1" } ), 1, assignments( { "011" } ) };
  change = modify_sop( f, swap );
  CHECK( f.total_literals() == 5 );
  CHECK( f.contains( cube_of( "-1-|1" ) ) );
  CHECK( f.contains( cube_of( "1-1|1" ) ) );
  CHECK( f.size() == 2 );
  restore_sop( f, change );
  CHECK( f.identical( original ) );

  solution const bad{ {}, cubes_of( { "111|1" } ), 4, {} };
  CHECK_THROWS_AS( modify_sop( f, bad ), error );
  CHECK( f.identical( original ) );
}

TEST_CASE( "modify and restore random solutions" )
{
  std::mt19937_64 rng( 51 );
  for ( int round = 0; round < 300; ++round )
  {
    int const n = 2 + static_cast<int>( rng() % 5 );
    int const m = 1 + static_cast<int>( rng() % 3 );
    auto const pool = oracle::random_cover( rng, n, m, 14 );
    std::vector<std::string> present( pool.begin(), pool.begin() + static_cast<long>( pool.size() / 2 ) );
    auto f = cover_of( present, n, m );
    // churn the slots first so that dead slots exist
    for ( int k = 0; k < 3 && !present.empty(); ++k )
    {
      auto const c = cube_of( present[rng() % present.size()] );
      auto const id = *f.find( c );
      f.remove( id );
      f.insert( c );
    }
    auto const before = f;
    solution s;
    for ( auto const& p : present )
    {
      if ( rng() % 2 )
      {
        s.removed.push_back( cube_of( p ) );
      }
    }
    for ( auto k = pool.size() / 2; k < pool.size(); ++k )
    {
      if ( rng() % 2 )
      {
        s.inserted.push_back( cube_of( pool[k] ) );
      }
    }
    normalize( s, f.counting() );
    auto const change = modify_sop( f, s );
    CHECK( f.total_literals() == before.total_literals() - s.reduction );
    restore_sop( f, change );
    CHECK( f.identical( before ) );
  }
}

TEST_CASE( "top solutions" )
{
  auto const counting = literal_counting::inputs_and_outputs;
  solution const a{ {}, cubes_of( { "111|1" } ), 4, { 1 } };
  solution const b{ {}, cubes_of( { "11-|1" } ), 2, { 2 } };
  solution const c{ {}, cubes_of( { "1--|1" } ), 1, { 3 } };
  auto const top = top_solutions( { c, a, b }, 2, counting );
  REQUIRE( top.size() == 2 );
  CHECK( top[0] == a );
  CHECK( top[1] == b );
  CHECK( top_solutions( { c }, 2, counting ) == std::vector<solution>{ c } );

  solution const fewer{ cubes_of( { "1--|1" } ), cubes_of( { "10-|1", "11-|1" } ), 3, { 1 } };
  solution const more{ {}, cubes_of( { "11-|1" } ), 3, { 1, 2 } };
  CHECK( top_solutions( { more, fewer }, 2, counting ) == std::vector<solution>{ fewer, more } );
  solution const lex_a{ {}, cubes_of( { "-11|1" } ), 3, { 1 } };
  solution const lex_b{ {}, cubes_of( { "011|1" } ), 3, { 2 } };
  CHECK( top_solutions( { lex_b, lex_a }, 2, counting ) == std::vector<solution>{ lex_a, lex_b } );
}

TEST_CASE( "solution ledger" )
{
  solution_ledger ledger( 2, literal_counting::inputs_and_outputs );
  REQUIRE( ledger.level( 0 ).size() == 1 );
  CHECK( ledger.level( 0 ).front().empty() );
  CHECK( ledger.best().reduction == 0 );

  solution const one{ {}, cubes_of( { "11-|1" } ), 3, { 4 } };
  CHECK( ledger.add( one ) );
  CHECK_FALSE( ledger.add( one ) );
  solution const three{ {}, cubes_of( { "1--|1" } ), 2, { 1, 2, 3 } };
  CHECK_FALSE( ledger.add( three ) );
  CHECK( ledger.level( 1 ).size() == 1 );
  CHECK( ledger.level( 3 ).empty() );

  ledger.offer( one );
  ledger.offer( three );
  CHECK( ledger.best() == one );
}

TEST_CASE( "approximate F0" )
{
  auto const f = cover_of( f0, 3, 1 );
  auto const result = approximate( f, noe_from_er( 0.25, 3 ), internal_only() );
  CHECK( result.max_errors == 2 );
  CHECK( result.result.total_literals() == 2 );
  CHECK( exhaustive_error_rate( f, result.result ).eic_count <= 2 );
  // exhaustive reference: the least literal count over every function within 2 errors
  std::vector<bool> on( 8 );
  for ( std::uint64_t v = 0; v < 8; ++v )
  {
    on[v] = oracle::evaluate( f0, v, 3 ) != 0;
  }
  CHECK( oracle::best_approximation( on, 3, 2 ) == 2 );

  auto const zero = approximate( f, 0, internal_only() );
  CHECK( patterns_of( zero.result ) == f0 );
  CHECK( exhaustive_error_rate( f, zero.result ).eic_count == 0 );

  // the search keeps the level-one insertion and removes more on top of it
  auto const best = search( f, 2, internal_only() );
  CHECK( best.reduction == 4 );
  CHECK( best.eics.size() == 2 );
}

TEST_CASE( "engine properties on random covers" )
{
  std::mt19937_64 rng( 61 );
  for ( int round = 0; round < 120; ++round )
  {
    int const n = 3 + static_cast<int>( rng() % 5 );
    int const m = 1 + static_cast<int>( rng() % 3 );
    auto const patterns = oracle::random_cover( rng, n, m, 3 + static_cast<int>( rng() % 10 ) );
    auto const f = cover_of( patterns, n, m );
    auto const before = f;
    std::uint64_t const e = rng() % 9;
    engine_stats stats;
    auto const best = search( f, e, internal_only(), &stats );
    CHECK( f.identical( before ) );
    CHECK( best.eics.size() <= e );
    CHECK( best.reduction >= 0 );
    auto const applied = apply( patterns, best, n, m );
    CHECK( oracle::eic_count( oracle::truth_table( patterns, n ), oracle::truth_table( applied, n ) ) <=
           best.eics.size() );

    auto const result = approximate( f, e, internal_only() );
    auto const result_patterns = patterns_of( result.result );
    CHECK( oracle::eic_count( oracle::truth_table( patterns, n ), oracle::truth_table( result_patterns, n ) ) <= e );
    CHECK( result.result.total_literals() <= f.total_literals() );
    CHECK( result.result.total_literals() <= result.minimized_literals );

    auto const again = approximate( f, e, internal_only() );
    CHECK( patterns_of( again.result ) == result_patterns );

    auto serial = internal_only();
    serial.insertion.policy = execution::serial;
    CHECK( patterns_of( approximate( f, e, serial ).result ) == result_patterns );

    auto dc = internal_only();
    dc.dc_eic = true;
    auto const with_dc = approximate( f, e, dc );
    CHECK( oracle::eic_count( oracle::truth_table( patterns, n ), oracle::truth_table( patterns_of( with_dc.result ), n ) ) <= e );
    CHECK( with_dc.result.total_literals() <= f.total_literals() );
  }
}

TEST_CASE( "inputs-only counting" )
{
  std::mt19937_64 rng( 67 );
  for ( int round = 0; round < 40; ++round )
  {
    int const n = 3 + static_cast<int>( rng() % 4 );
    int const m = 1 + static_cast<int>( rng() % 3 );
    auto const patterns = oracle::random_cover( rng, n, m, 3 + static_cast<int>( rng() % 8 ) );
    auto const f = cover_of( patterns, n, m, literal_counting::inputs_only );
    auto const result = approximate( f, 3, internal_only() );
    CHECK( result.result.counting() == literal_counting::inputs_only );
    CHECK( result.result.total_literals() == oracle::literals( patterns_of( result.result ), true ) );
    CHECK( result.result.total_literals() <= oracle::literals( patterns, true ) );
    CHECK( oracle::eic_count( oracle::truth_table( patterns, n ), oracle::truth_table( patterns_of( result.result ), n ) ) <= 3 );
  }
}

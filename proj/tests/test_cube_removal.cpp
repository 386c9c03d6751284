#include "helpers.hpp"

#include <sopals/cube_insertion.hpp>
#include <sopals/cube_removal.hpp>
#include <sopals/engine.hpp>

#include <doctest.h>

#include <random>

using namespace sopals;
using namespace testing;

TEST_CASE( "cube EICs" )
{
  auto const f = cover_of( f0, 3, 1 );
  CHECK( get_cube_eic( 0, f, eic_set{} ) == assignments( { "010", "110" } ) );
  CHECK( get_cube_eic( 0, f, assignments( { "010" } ) ) == assignments( { "110" } ) );
  CHECK( get_cube_eic( 0, f, assignment_set( 3, assignments( { "010" } ) ) ) == assignments( { "110" } ) );
  auto const g = cover_of( f1, 3, 1 );
  CHECK( get_cube_eic( *g.find( cube_of( "11-|1" ) ), g, eic_set{} ).empty() );
  CHECK_THROWS_AS( get_cube_eic( 7, f, eic_set{} ), error );
}

TEST_CASE( "removal gain" )
{
  CHECK( removal_gain( 3, 2 ) == doctest::Approx( 1.5 ) );
  CHECK( removal_gain( 3, 0 ) == doctest::Approx( 300.0 ) );
  CHECK( removal_gain( 1, 1 ) == doctest::Approx( 1.0 ) );
}

TEST_CASE( "cube removal on F0 and F1" )
{
  auto f = cover_of( f0, 3, 1 );
  auto const original = f;
  std::vector<removal_step> steps;
  auto const s3 = cube_removal( f, 2, solution{}, original, &steps );
  CHECK( patterns_of( s3.removed, 3, 1 ) == std::vector<std::string>{ "-10|1" } );
  CHECK( s3.inserted.empty() );
  CHECK( s3.eics == assignments( { "010", "110" } ) );
  CHECK( s3.reduction == 3 );
  CHECK( f.identical( original ) );
  REQUIRE( steps.size() == 1 );
  CHECK( steps[0].gain == doctest::Approx( 1.5 ) );
  CHECK( oracle::eic_count( oracle::truth_table( f0, 3 ), oracle::truth_table( apply( f0, s3, 3, 1 ), 3 ) ) == 2 );

  auto const none = cube_removal( f, 1, solution{}, original );
  CHECK( none.empty() );
  CHECK( none.eics.empty() );
  CHECK( f.identical( original ) );

  auto g = cover_of( f1, 3, 1 );
  auto const g0 = g;
  auto const shadow = cube_removal( g, 0, solution{}, g0 );
  CHECK( patterns_of( shadow.removed, 3, 1 ) == std::vector<std::string>{ "11-|1" } );
  CHECK( shadow.eics.empty() );
  CHECK( shadow.reduction == 3 );
  CHECK( g.identical( g0 ) );

  cover empty( 3, 1 );
  CHECK( cube_removal( empty, 4, solution{}, empty ).empty() );
}

TEST_CASE( "update eics" )
{
  auto const f = cover_of( f0, 3, 1 );
  auto const without_c1 = cover_of( { "1-1|1" }, 3, 1 );
  CHECK( update_eics( {}, assignments( { "010", "110" } ), without_c1, f ) == assignments( { "010", "110" } ) );
  // inserting "-1-|1" made 011 wrong; taking it out again corrects 011
  CHECK( update_eics( assignments( { "011" } ), {}, f, f ).empty() );
  CHECK( update_eics( assignments( { "010" } ), {}, without_c1, f ) == assignments( { "010" } ) );
}

TEST_CASE( "removal takes back an inserted cube and corrects its EIC" )
{
  // base solution inserts "-1-|1" and removes c1: 011 is wrong
  auto f = cover_of( f0, 3, 1 );
  auto const original = f;
  solution const base{ cubes_of( { "-1-|1" } ), cubes_of( { "-10|1" } ), 1, assignments( { "011" } ) };
  auto const change = modify_sop( f, base );
  auto const modified = f;
  auto const s3 = cube_removal( f, 4, base, original );
  CHECK( f.identical( modified ) );
  CHECK( s3.inserted.empty() );
  CHECK( patterns_of( s3.removed, 3, 1 ) == f0 );
  CHECK( s3.eics == assignments( { "010", "101", "110", "111" } ) );
  restore_sop( f, change );
  CHECK( f.identical( original ) );
  auto const after = apply( f0, s3, 3, 1 );
  auto const wrong = oracle::eic_list( oracle::truth_table( f0, 3 ), oracle::truth_table( after, 3 ) );
  CHECK( eic_set( wrong ) == s3.eics );
}

TEST_CASE( "removal properties on random covers" )
{
  std::mt19937_64 rng( 41 );
  for ( int round = 0; round < 200; ++round )
  {
    int const n = 2 + static_cast<int>( rng() % 5 );
    int const m = 1 + static_cast<int>( rng() % 3 );
    auto const patterns = oracle::random_cover( rng, n, m, 2 + static_cast<int>( rng() % 8 ) );
    auto f = cover_of( patterns, n, m );
    auto const original = f;
    std::uint64_t const budget = rng() % 6;
    std::vector<removal_step> steps;
    auto const s3 = cube_removal( f, budget, solution{}, original, &steps );
    CHECK( f.identical( original ) );
    CHECK( s3.eics.size() <= budget );
    CHECK( s3.inserted.empty() );
    auto const after = apply( patterns, s3, n, m );
    CHECK( oracle::eic_count( oracle::truth_table( patterns, n ), oracle::truth_table( after, n ) ) == s3.eics.size() );
    CHECK( oracle::literals( after ) == oracle::literals( patterns ) - s3.reduction );

    // greedy dominance: replay the steps and compare with every qualifying cube
    auto replay = original;
    assignment_set seen( n );
    std::uint64_t left = budget;
    for ( auto const& step : steps )
    {
      for ( auto id : replay.ids() )
      {
        auto const k = get_cube_eic( id, replay, seen ).size();
        if ( k <= left && replay.literals( replay[id] ) > 0 )
        {
          CHECK( step.gain >= removal_gain( replay.literals( replay[id] ), k ) );
        }
      }
      auto const id = *replay.find( step.removed );
      for ( auto v : get_cube_eic( id, replay, seen ) )
      {
        seen.insert( v );
      }
      left -= step.eics;
      replay.remove( id );
      CHECK( step.budget_left == left );
    }
  }
}

TEST_CASE( "removal after insertion stays exact or conservative" )
{
  std::mt19937_64 rng( 43 );
  for ( int round = 0; round < 150; ++round )
  {
    int const n = 3 + static_cast<int>( rng() % 4 );
    int const m = 1 + static_cast<int>( rng() % 2 );
    auto const patterns = oracle::random_cover( rng, n, m, 3 + static_cast<int>( rng() % 6 ) );
    auto f = cover_of( patterns, n, m );
    auto const original = f;
    auto const found = cube_insertion( f, 2, solution{} );
    for ( auto const* s : { &found.one_error, &found.two_error } )
    {
      if ( !*s )
      {
        continue;
      }
      auto const change = modify_sop( f, **s );
      auto const s3 = cube_removal( f, 3, **s, original );
      restore_sop( f, change );
      CHECK( f.identical( original ) );
      CHECK( eic_difference( s3.eics, ( *s )->eics ).size() <= 3 );
      auto const after = apply( patterns, s3, n, m );
      auto const wrong = oracle::eic_list( oracle::truth_table( patterns, n ), oracle::truth_table( after, n ) );
      CHECK( eic_difference( eic_set( wrong ), s3.eics ).empty() );
      CHECK( oracle::literals( after ) == oracle::literals( patterns ) - s3.reduction );
    }
  }
}

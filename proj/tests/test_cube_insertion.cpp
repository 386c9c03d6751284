#include "helpers.hpp"

#include <sopals/cube_insertion.hpp>
#include <sopals/engine.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace sopals;
using namespace testing;

namespace
{

struct tree_text
{
  std::vector<std::string> root;
  std::vector<std::pair<std::string, std::string>> leaves;
  friend bool operator==( tree_text const&, tree_text const& ) = default;
};

std::vector<tree_text> describe_trees( std::vector<sct> const& trees, int n, int m )
{
  std::vector<tree_text> out;
  for ( auto const& t : trees )
  {
    tree_text x;
    for ( auto v : t.root )
    {
      x.root.push_back( assignment_string( v, n ) );
    }
    for ( auto const& l : t.leaves )
    {
      x.leaves.emplace_back( to_string( l.leaf, n, m ), to_string( l.origin, n, m ) );
    }
    out.push_back( x );
  }
  return out;
}

} // namespace

TEST_CASE( "generate trees for F0" )
{
  auto const f = cover_of( f0, 3, 1 );
  auto const trees = describe_trees( generate_scts( f, 2, {} ), 3, 1 );
  std::vector<tree_text> const expected{ { { "011" }, { { "-1-|1", "-10|1" } } },
                                         { { "100" }, { { "1--|1", "1-1|1" } } },
                                         { { "000", "100" }, { { "--0|1", "-10|1" } } },
                                         { { "001", "011" }, { { "--1|1", "1-1|1" } } } };
  CHECK( trees == expected );
  CHECK( generate_scts( f, 1, {} ).size() == 2 );

  auto const with_prior = describe_trees( generate_scts( f, 1, assignments( { "011" } ) ), 3, 1 );
  // with 011 already wrong, "--1" adds only 001
  CHECK( with_prior == std::vector<tree_text>{ { { "001" }, { { "--1|1", "1-1|1" } } }, { { "100" }, { { "1--|1", "1-1|1" } } } } );

  CHECK( describe_trees( generate_scts( f, 2, {}, execution::serial ), 3, 1 ) == trees );
}

TEST_CASE( "augment F0 trees" )
{
  auto const f = cover_of( f0, 3, 1 );
  auto trees = generate_scts( f, 2, {} );
  augment( trees );
  auto const text = describe_trees( trees, 3, 1 );
  CHECK( text[2].leaves == std::vector<std::pair<std::string, std::string>>{ { "--0|1", "-10|1" }, { "1--|1", "1-1|1" } } );
  CHECK( text[3].leaves == std::vector<std::pair<std::string, std::string>>{ { "--1|1", "1-1|1" }, { "-1-|1", "-10|1" } } );
  CHECK( text[0].leaves.size() == 1 );
  CHECK( text[1].leaves.size() == 1 );

  std::vector<sct> disjoint{ { assignments( { "000" } ), { { cube_of( "-1-|1" ), cube_of( "-10|1" ) } }, 0 },
                             { assignments( { "001", "111" } ), { { cube_of( "--1|1" ), cube_of( "1-1|1" ) } }, 0 } };
  augment( disjoint );
  CHECK( disjoint[1].leaves.size() == 1 );
}

TEST_CASE( "estimate reduction on F0" )
{
  auto const f = cover_of( f0, 3, 1 );
  auto trees = generate_scts( f, 2, {} );
  augment( trees );
  auto const one = estimate_reduction( f, trees[0] );
  CHECK( one.reduction == 1 );
  CHECK( patterns_of( one.inserted, 3, 1 ) == std::vector<std::string>{ "-1-|1" } );
  CHECK( patterns_of( one.removed, 3, 1 ) == std::vector<std::string>{ "-10|1" } );

  auto const both = estimate_reduction( f, trees[2] );
  CHECK( both.reduction == 2 );
  CHECK( both.inserted.size() == 2 );
  CHECK( both.removed.size() == 2 );

  // single-leaf subsets of the augmented tree each give +1
  CHECK( simulate_insertion( f, cubes_of( { "--0|1" } ) ).reduction == 1 );
  CHECK( simulate_insertion( f, cubes_of( { "1--|1" } ) ).reduction == 1 );

  auto const g = cover_of( { "01-|10" }, 3, 2 );
  sct const flat{ assignments( { "000" } ), { { cube_of( "0--|11" ), cube_of( "01-|10" ) } }, 0 };
  CHECK( estimate_reduction( g, flat ).reduction == 0 );
}

TEST_CASE( "combine and estimate on F0" )
{
  auto const f = cover_of( f0, 3, 1 );
  auto trees = generate_scts( f, 2, {} );
  augment( trees );
  auto const found = combine_and_estimate( f, trees );
  REQUIRE( found.one_error );
  REQUIRE( found.two_error );
  CHECK( patterns_of( found.one_error->inserted, 3, 1 ) == std::vector<std::string>{ "-1-|1" } );
  CHECK( patterns_of( found.one_error->removed, 3, 1 ) == std::vector<std::string>{ "-10|1" } );
  CHECK( found.one_error->reduction == 1 );
  CHECK( found.one_error->eics == assignments( { "011" } ) );
  CHECK( patterns_of( found.two_error->inserted, 3, 1 ) == std::vector<std::string>{ "-1-|1", "1--|1" } );
  CHECK( patterns_of( found.two_error->removed, 3, 1 ) == f0 );
  CHECK( found.two_error->reduction == 2 );
  CHECK( found.two_error->eics == assignments( { "011", "100" } ) );
  CHECK( trees[0].estimated_reduction == 1 );

  std::vector<sct> none;
  auto const empty = combine_and_estimate( f, none );
  CHECK_FALSE( empty.one_error );
  CHECK_FALSE( empty.two_error );
}

TEST_CASE( "update solution" )
{
  auto const counting = literal_counting::inputs_and_outputs;
  solution const s1{ cubes_of( { "-1-|1" } ), cubes_of( { "-10|1" } ), 1, assignments( { "011" } ) };
  CHECK( update_solution( s1, solution{}, counting ) == s1 );

  solution const s{ {}, cubes_of( { "-10|1" } ), 3, assignments( { "010", "110" } ) };
  solution const part{ cubes_of( { "1--|1" } ), cubes_of( { "1-1|1" } ), 1, assignments( { "100" } ) };
  auto const merged = update_solution( part, s, counting );
  CHECK( patterns_of( merged.removed, 3, 1 ) == f0 );
  CHECK( patterns_of( merged.inserted, 3, 1 ) == std::vector<std::string>{ "1--|1" } );
  CHECK( merged.reduction == 4 );
  CHECK( merged.eics == assignments( { "010", "100", "110" } ) );
  // the recorded set is conservative: "1--" puts 110 back, so only 010 and 100 are wrong
  auto const after = apply( f0, merged, 3, 1 );
  CHECK( oracle::eic_list( oracle::truth_table( f0, 3 ), oracle::truth_table( after, 3 ) ) ==
         assignments( { "010", "100" } ) );

  solution const undo{ {}, cubes_of( { "-1-|1" } ), 2, assignments( { "000" } ) };
  auto const cancelled = update_solution( undo, s1, counting );
  CHECK( cancelled.inserted.empty() );
  CHECK( patterns_of( cancelled.removed, 3, 1 ) == std::vector<std::string>{ "-10|1" } );
  CHECK( cancelled.reduction == 3 );

  CHECK_THROWS_AS( update_solution( s1, s1, counting ), error );
}

TEST_CASE( "tree and solution properties on random covers" )
{
  std::mt19937_64 rng( 21 );
  for ( int round = 0; round < 150; ++round )
  {
    int const n = 2 + static_cast<int>( rng() % 5 );
    int const m = 1 + static_cast<int>( rng() % 3 );
    auto const patterns = oracle::random_cover( rng, n, m, 2 + static_cast<int>( rng() % 7 ) );
    auto const f = cover_of( patterns, n, m );
    auto const table = oracle::truth_table( patterns, n );

    auto trees = generate_scts( f, 2, {} );
    CHECK( describe_trees( generate_scts( f, 2, {}, execution::serial ), n, m ) == describe_trees( trees, n, m ) );
    for ( auto const& t : trees )
    {
      CHECK( ( t.root.size() == 1 || t.root.size() == 2 ) );
      for ( auto const& l : t.leaves )
      {
        CHECK( l.leaf.contains( l.origin ) );
        CHECK( l.leaf != l.origin );
        CHECK( f.contains( l.origin ) );
        auto const leaf_text = to_string( l.leaf, n, m );
        CHECK( eic_set( oracle::insertion_eics( leaf_text, patterns, {} ) ) == t.root );
      }
    }
    augment( trees );
    for ( auto const& t : trees )
    {
      for ( auto const& l : t.leaves )
      {
        auto const eics = oracle::insertion_eics( to_string( l.leaf, n, m ), patterns, {} );
        CHECK( eic_difference( eic_set( eics ), t.root ).empty() );
      }
      // the estimate is the exact literal delta, and the edit adds errors only at its EICs
      auto const estimate = estimate_reduction( f, t );
      solution s{ estimate.inserted, estimate.removed, 0, {} };
      normalize( s, f.counting() );
      CHECK( s.reduction == estimate.reduction );
      auto const after = apply( patterns, s, n, m );
      CHECK( oracle::literals( after ) == oracle::literals( patterns ) - estimate.reduction );
      auto const wrong = oracle::eic_list( table, oracle::truth_table( after, n ) );
      CHECK( eic_difference( eic_set( wrong ), t.root ).empty() );
    }

    auto const found = combine_and_estimate( f, trees );
    for ( auto const* s : { &found.one_error, &found.two_error } )
    {
      if ( !*s )
      {
        continue;
      }
      auto const after = apply( patterns, **s, n, m );
      CHECK( oracle::eic_count( table, oracle::truth_table( after, n ) ) == ( *s )->eics.size() );
      CHECK( oracle::literals( after ) == oracle::literals( patterns ) - ( *s )->reduction );
      CHECK( ( *s )->reduction >= 1 );
    }
    if ( found.one_error )
    {
      CHECK( found.one_error->eics.size() == 1 );
    }
    if ( found.two_error )
    {
      CHECK( found.two_error->eics.size() <= 2 );
    }
  }
}

TEST_CASE( "insertion on a modified cover merges with the base solution" )
{
  std::mt19937_64 rng( 31 );
  for ( int round = 0; round < 80; ++round )
  {
    int const n = 3 + static_cast<int>( rng() % 4 );
    int const m = 1 + static_cast<int>( rng() % 2 );
    auto const patterns = oracle::random_cover( rng, n, m, 3 + static_cast<int>( rng() % 6 ) );
    auto f = cover_of( patterns, n, m );
    auto const original = f;
    auto const first = cube_insertion( f, 2, solution{} );
    if ( !first.one_error )
    {
      continue;
    }
    auto const base = *first.one_error;
    auto const change = modify_sop( f, base );
    auto const next = cube_insertion( f, 2, base );
    restore_sop( f, change );
    CHECK( f.identical( original ) );
    auto const table = oracle::truth_table( patterns, n );
    for ( auto const* s : { &next.one_error, &next.two_error } )
    {
      if ( !*s )
      {
        continue;
      }
      auto const after = apply( patterns, **s, n, m );
      CHECK( oracle::eic_count( table, oracle::truth_table( after, n ) ) <= ( *s )->eics.size() );
      CHECK( ( *s )->eics.size() > base.eics.size() );
      CHECK( oracle::literals( after ) == oracle::literals( patterns ) - ( *s )->reduction );
    }
  }
}

TEST_CASE( "pair pruning matches estimating every pair" )
{
  std::mt19937_64 rng( 37 );
  for ( int round = 0; round < 60; ++round )
  {
    int const n = 4 + static_cast<int>( rng() % 4 );
    int const m = 1 + static_cast<int>( rng() % 2 );
    auto const f = cover_of( oracle::random_cover( rng, n, m, 6 + static_cast<int>( rng() % 14 ), 0.8 ), n, m );
    auto trees = generate_scts( f, 2, {} );
    augment( trees );
    auto const found = combine_and_estimate( f, trees );

    // reference: every pair estimated, same order and tie rule
    std::vector<std::size_t> singles;
    for ( std::size_t k = 0; k < trees.size(); ++k )
    {
      if ( trees[k].root.size() == 1 )
      {
        singles.push_back( k );
      }
    }
    std::stable_sort( singles.begin(), singles.end(), [&]( std::size_t a, std::size_t b ) {
      return trees[a].estimated_reduction > trees[b].estimated_reduction;
    } );
    auto count = [&]( double fraction ) {
      return std::min( singles.size(), static_cast<std::size_t>( std::ceil( fraction * static_cast<double>( singles.size() ) - 1e-9 ) ) );
    };
    auto better = [&]( reduction_estimate const& a, reduction_estimate const& b ) {
      if ( a.reduction != b.reduction )
      {
        return a.reduction > b.reduction;
      }
      return oracle::literals( patterns_of( a.inserted, n, m ) ) < oracle::literals( patterns_of( b.inserted, n, m ) );
    };
    std::optional<reduction_estimate> best;
    for ( std::size_t i = 0; i < count( 0.25 ); ++i )
    {
      for ( std::size_t j = i + 1; j < count( 0.80 ); ++j )
      {
        sct pair{ eic_union( trees[singles[i]].root, trees[singles[j]].root ), trees[singles[i]].leaves, 0 };
        for ( auto const& leaf : trees[singles[j]].leaves )
        {
          if ( std::find( pair.leaves.begin(), pair.leaves.end(), leaf ) == pair.leaves.end() )
          {
            pair.leaves.push_back( leaf );
          }
        }
        auto const e = estimate_reduction( f, pair );
        if ( !best || better( e, *best ) )
        {
          best = e;
        }
      }
    }
    for ( auto const& t : trees )
    {
      if ( t.root.size() == 2 )
      {
        auto const e = estimate_reduction( f, t );
        if ( !best || better( e, *best ) )
        {
          best = e;
        }
      }
    }
    REQUIRE( best.has_value() == found.two_error.has_value() );
    if ( best )
    {
      auto inserted = best->inserted;
      auto removed = best->removed;
      std::sort( inserted.begin(), inserted.end(), pattern_less{} );
      std::sort( removed.begin(), removed.end(), pattern_less{} );
      CHECK( found.two_error->reduction == best->reduction );
      CHECK( patterns_of( found.two_error->inserted, n, m ) == patterns_of( inserted, n, m ) );
      CHECK( patterns_of( found.two_error->removed, n, m ) == patterns_of( removed, n, m ) );
    }
  }
}

#include <sopals/cube_insertion.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace sopals
{

namespace
{

struct expansion_root
{
  cube leaf;
  cube origin;
  eic_set root;
};

/* EICs of `leaf` outside `prior`, or nothing once there are more than max_eics.
   Only the half of the expansion outside the origin can be off the ON-set. */
std::optional<eic_set> expansion_eics( cover const& f, cube const& origin, std::uint64_t dropped, int max_eics,
                                       assignment_set const& prior )
{
  cube const mirror{ origin.care, origin.value ^ dropped, origin.outputs };
  eic_set root;
  bool const within = for_each_assignment_until( mirror, f.num_inputs(), [&]( std::uint64_t v ) {
    if ( prior.contains( v ) )
    {
      return true;
    }
    for ( auto outs = origin.outputs; outs != 0; outs &= outs - 1 )
    {
      if ( f.cover_count( v, static_cast<std::uint32_t>( std::countr_zero( outs ) ) ) == 0 )
      {
        root.push_back( v );
        break;
      }
    }
    return root.size() <= static_cast<std::size_t>( max_eics );
  } );
  if ( !within )
  {
    return std::nullopt;
  }
  return root;
}

std::vector<expansion_root> cube_expansions( cover const& f, cube_id id, int max_eics, assignment_set const& prior )
{
  std::vector<expansion_root> result;
  auto const& c = f[id];
  auto const n = f.num_inputs();
  for ( int i = 0; i < n; ++i )
  {
    auto const bit = input_bit( n, i );
    if ( ( c.care & bit ) == 0 )
    {
      continue;
    }
    auto root = expansion_eics( f, c, bit, max_eics, prior );
    if ( !root || root->empty() )
    {
      continue;
    }
    cube const leaf{ c.care & ~bit, c.value & ~bit, c.outputs };
    result.push_back( { leaf, c, std::move( *root ) } );
  }
  return result;
}

bool root_less( eic_set const& a, eic_set const& b )
{
  if ( a.size() != b.size() )
  {
    return a.size() < b.size();
  }
  return a < b;
}

} // namespace

std::vector<sct> generate_scts( cover const& f, int max_eics, eic_set const& prior, execution policy )
{
  if ( max_eics < 1 )
  {
    return {};
  }
  assignment_set const prior_set( f.num_inputs(), prior );
  auto const ids = f.ids();
  std::vector<std::vector<expansion_root>> per_cube( ids.size() );
  auto const count = static_cast<std::int64_t>( ids.size() );
  if ( policy == execution::parallel )
  {
#pragma omp parallel for schedule( dynamic, 4 )
    for ( std::int64_t k = 0; k < count; ++k )
    {
      per_cube[k] = cube_expansions( f, ids[k], max_eics, prior_set );
    }
  }
  else
  {
    for ( std::int64_t k = 0; k < count; ++k )
    {
      per_cube[k] = cube_expansions( f, ids[k], max_eics, prior_set );
    }
  }

  std::map<eic_set, std::size_t> by_root;
  std::vector<sct> result;
  for ( auto& expansions_of_cube : per_cube )
  {
    for ( auto& e : expansions_of_cube )
    {
      auto [it, fresh] = by_root.try_emplace( e.root, result.size() );
      if ( fresh )
      {
        result.push_back( sct{ std::move( e.root ), {}, 0 } );
      }
      result[it->second].leaves.push_back( { e.leaf, e.origin } );
    }
  }
  std::stable_sort( result.begin(), result.end(),
                    []( sct const& a, sct const& b ) { return root_less( a.root, b.root ); } );
  return result;
}

void augment( std::vector<sct>& scts )
{
  std::vector<std::size_t> singles;
  for ( std::size_t k = 0; k < scts.size(); ++k )
  {
    if ( scts[k].root.size() == 1 )
    {
      singles.push_back( k );
    }
  }
  for ( auto& target : scts )
  {
    if ( target.root.size() != 2 )
    {
      continue;
    }
    for ( auto k : singles )
    {
      if ( !eic_contains( target.root, scts[k].root.front() ) )
      {
        continue;
      }
      for ( auto const& leaf : scts[k].leaves )
      {
        if ( std::find( target.leaves.begin(), target.leaves.end(), leaf ) == target.leaves.end() )
        {
          target.leaves.push_back( leaf );
        }
      }
    }
  }
}

namespace
{

/* Removal candidates for a set of leaves: live cubes meeting any leaf, larger
   (more literals) first, then slot order. */
std::vector<cube_id> removal_candidates( cover const& f, std::vector<cube> const& leaves )
{
  std::vector<std::pair<int, cube_id>> found;
  for ( cube_id id = 0; id < f.slot_count(); ++id )
  {
    if ( !f.alive( id ) )
    {
      continue;
    }
    auto const& d = f[id];
    if ( std::any_of( leaves.begin(), leaves.end(), [&]( cube const& x ) { return x.intersects( d ); } ) )
    {
      found.emplace_back( -f.literals( d ), id );
    }
  }
  // (negated literals, id) pairs are distinct, so a plain sort is stable here
  std::sort( found.begin(), found.end() );
  std::vector<cube_id> result;
  result.reserve( found.size() );
  for ( auto const& [lits, id] : found )
  {
    result.push_back( id );
  }
  return result;
}

/* Removal simulation for subsets of a fixed leaf list. The minterms of all
   candidates are numbered once, with their cover counts and covering leaves,
   so that each subset run is a walk over flat arrays. */
class insertion_simulator
{
public:
  insertion_simulator( cover const& f, std::vector<cube> const& leaves, std::vector<cube_id> const& candidates )
      : f_( f ), leaves_( leaves )
  {
    auto const n = f.num_inputs();
    auto const m = static_cast<std::uint64_t>( f.num_outputs() );
    std::vector<std::uint64_t> keys;
    for ( auto id : candidates )
    {
      auto const& d = f[id];
      for_each_assignment_until( d, n, [&]( std::uint64_t v ) {
        for ( auto outs = d.outputs; outs != 0; outs &= outs - 1 )
        {
          keys.push_back( v * m + static_cast<std::uint64_t>( std::countr_zero( outs ) ) );
        }
        return true;
      } );
    }
    // per candidate: its minterms in enumeration order, as indices into the sorted key list
    std::vector<std::uint64_t> raw = keys;
    std::sort( keys.begin(), keys.end() );
    keys.erase( std::unique( keys.begin(), keys.end() ), keys.end() );
    counts_.resize( keys.size() );
    for ( std::size_t k = 0; k < keys.size(); ++k )
    {
      counts_[k] = static_cast<std::int32_t>( f.cover_count( keys[k] / m, static_cast<std::uint32_t>( keys[k] % m ) ) );
    }

    std::size_t next = 0;
    for ( auto id : candidates )
    {
      auto const& d = f[id];
      candidate c{ id, {}, 0, 0 };
      for ( std::size_t l = 0; l < leaves.size(); ++l )
      {
        if ( leaves[l].intersects( d ) )
        {
          c.touching.push_back( static_cast<std::uint32_t>( l ) );
        }
      }
      c.first = static_cast<std::uint32_t>( entries_.size() );
      auto const count = minterm_count( d, n );
      for ( std::uint64_t j = 0; j < count; ++j, ++next )
      {
        auto const key = raw[next];
        minterm const t{ key / m, static_cast<std::uint32_t>( key % m ) };
        entry e{ static_cast<std::uint32_t>( std::lower_bound( keys.begin(), keys.end(), key ) - keys.begin() ),
                 static_cast<std::uint32_t>( covering_.size() ), 0 };
        // a leaf covering a minterm of d intersects d
        for ( auto l : c.touching )
        {
          if ( leaves[l].covers( t ) )
          {
            covering_.push_back( l );
          }
        }
        e.last = static_cast<std::uint32_t>( covering_.size() );
        entries_.push_back( e );
      }
      c.last = static_cast<std::uint32_t>( entries_.size() );
      candidates_.push_back( std::move( c ) );
    }
  }

  // chosen[l] != 0 inserts leaf l
  reduction_estimate run( std::vector<char> const& chosen ) const
  {
    reduction_estimate result;
    for ( std::size_t l = 0; l < leaves_.size(); ++l )
    {
      if ( chosen[l] )
      {
        result.inserted.push_back( leaves_[l] );
      }
    }
    std::vector<std::int32_t> taken( counts_.size() );
    for ( auto const& c : candidates_ )
    {
      if ( std::none_of( c.touching.begin(), c.touching.end(), [&]( std::uint32_t l ) { return chosen[l] != 0; } ) )
      {
        continue;
      }
      bool removable = true;
      for ( auto j = c.first; j < c.last && removable; ++j )
      {
        auto const& e = entries_[j];
        auto remaining = counts_[e.key] - taken[e.key];
        for ( auto k = e.first; k < e.last && remaining < 2; ++k )
        {
          remaining += chosen[covering_[k]] ? 1 : 0;
        }
        removable = remaining >= 2;
      }
      if ( removable )
      {
        result.removed.push_back( f_[c.id] );
        for ( auto j = c.first; j < c.last; ++j )
        {
          ++taken[entries_[j].key];
        }
      }
    }
    result.reduction = literal_sum( result.removed, f_.counting() ) - literal_sum( result.inserted, f_.counting() );
    return result;
  }

private:
  struct candidate
  {
    cube_id id;
    std::vector<std::uint32_t> touching;
    // its minterms: entries_[first .. last)
    std::uint32_t first;
    std::uint32_t last;
  };
  struct entry
  {
    std::uint32_t key;
    // leaves covering the minterm: covering_[first .. last)
    std::uint32_t first;
    std::uint32_t last;
  };

  cover const& f_;
  std::vector<cube> const& leaves_;
  std::vector<std::int32_t> counts_;
  std::vector<entry> entries_;
  std::vector<std::uint32_t> covering_;
  std::vector<candidate> candidates_;
};

bool better_estimate( reduction_estimate const& a, reduction_estimate const& b, literal_counting counting )
{
  if ( a.reduction != b.reduction )
  {
    return a.reduction > b.reduction;
  }
  return literal_sum( a.inserted, counting ) < literal_sum( b.inserted, counting );
}

} // namespace

reduction_estimate simulate_insertion( cover const& f, std::vector<cube> const& leaves )
{
  insertion_simulator const simulator( f, leaves, removal_candidates( f, leaves ) );
  return simulator.run( std::vector<char>( leaves.size(), 1 ) );
}

reduction_estimate estimate_reduction( cover const& f, sct const& tree, std::size_t exhaustive_leaf_limit )
{
  // distinct leaf cubes, each with the best saving over its origins
  std::vector<cube> leaves;
  std::vector<int> saving;
  for ( auto const& l : tree.leaves )
  {
    auto const s = f.literals( l.origin ) - f.literals( l.leaf );
    if ( auto it = std::find( leaves.begin(), leaves.end(), l.leaf ); it != leaves.end() )
    {
      auto& best = saving[static_cast<std::size_t>( it - leaves.begin() )];
      best = std::max( best, s );
      continue;
    }
    leaves.push_back( l.leaf );
    saving.push_back( s );
  }
  reduction_estimate best;
  if ( leaves.empty() )
  {
    return best;
  }
  auto const candidates = removal_candidates( f, leaves );
  auto const counting = f.counting();
  insertion_simulator const simulator( f, leaves, candidates );

  if ( leaves.size() <= exhaustive_leaf_limit )
  {
    /* Upper bound per subset: a candidate can only go if every minterm it
       alone covers is covered by a chosen leaf. Subsets whose bound is below
       the best reduction so far cannot win and are not simulated. */
    struct requirement
    {
      std::uint32_t touch{};
      std::vector<std::uint32_t> needs;
      int literals{};
    };
    std::vector<requirement> reqs;
    for ( auto id : candidates )
    {
      requirement r{ 0, {}, f.literals( f[id] ) };
      bool possible = true;
      for ( std::size_t k = 0; k < leaves.size(); ++k )
      {
        r.touch |= leaves[k].intersects( f[id] ) ? 1u << k : 0u;
      }
      for ( auto const& t : f.unique_minterms( id ) )
      {
        std::uint32_t covering = 0;
        for ( std::size_t k = 0; k < leaves.size(); ++k )
        {
          covering |= leaves[k].covers( t ) ? 1u << k : 0u;
        }
        if ( covering == 0 )
        {
          possible = false;
          break;
        }
        if ( std::find( r.needs.begin(), r.needs.end(), covering ) == r.needs.end() )
        {
          r.needs.push_back( covering );
        }
      }
      if ( possible )
      {
        reqs.push_back( std::move( r ) );
      }
    }
    auto bound = [&]( std::uint32_t mask ) {
      std::int64_t total = 0;
      for ( auto const& r : reqs )
      {
        if ( ( r.touch & mask ) != 0 &&
             std::all_of( r.needs.begin(), r.needs.end(), [&]( std::uint32_t c ) { return ( c & mask ) != 0; } ) )
        {
          total += r.literals;
        }
      }
      for ( std::size_t k = 0; k < leaves.size(); ++k )
      {
        total -= ( ( mask >> k ) & 1u ) ? f.literals( leaves[k] ) : 0;
      }
      return total;
    };

    bool found = false;
    for ( std::uint32_t mask = 1; mask < ( 1u << leaves.size() ); ++mask )
    {
      if ( found && bound( mask ) < best.reduction )
      {
        continue;
      }
      std::vector<char> subset( leaves.size() );
      for ( std::size_t k = 0; k < leaves.size(); ++k )
      {
        subset[k] = static_cast<char>( ( mask >> k ) & 1u );
      }
      auto estimate = simulator.run( subset );
      if ( !found || better_estimate( estimate, best, counting ) )
      {
        best = std::move( estimate );
        found = true;
      }
    }
    return best;
  }

  std::vector<std::size_t> order( leaves.size() );
  for ( std::size_t k = 0; k < order.size(); ++k )
  {
    order[k] = k;
  }
  std::stable_sort( order.begin(), order.end(), [&]( std::size_t a, std::size_t b ) { return saving[a] > saving[b]; } );
  std::vector<char> chosen( leaves.size() );
  for ( auto k : order )
  {
    chosen[k] = 1;
    auto estimate = simulator.run( chosen );
    if ( best.inserted.empty() || estimate.reduction > best.reduction )
    {
      best = std::move( estimate );
    }
    else
    {
      chosen[k] = 0;
    }
  }
  return best;
}

namespace
{

/* Upper bound on the reduction of any subset of `tree`'s leaves. A cube
   without unique minterms may go for free; any other removed cube needs a
   chosen leaf covering one of its unique minterms and is charged to each such
   leaf. A leaf contributes at most its charge less its own literals. */
std::int64_t reduction_bound( cover const& f, sct const& tree )
{
  std::vector<cube> leaves;
  for ( auto const& l : tree.leaves )
  {
    if ( std::find( leaves.begin(), leaves.end(), l.leaf ) == leaves.end() )
    {
      leaves.push_back( l.leaf );
    }
  }
  std::int64_t free_total = 0;
  std::vector<std::int64_t> charge( leaves.size() );
  for ( auto id : removal_candidates( f, leaves ) )
  {
    auto const unique = f.unique_minterms( id );
    bool possible = true;
    std::vector<bool> serves( leaves.size() );
    for ( auto const& t : unique )
    {
      bool covered = false;
      for ( std::size_t k = 0; k < leaves.size(); ++k )
      {
        if ( leaves[k].covers( t ) )
        {
          serves[k] = true;
          covered = true;
        }
      }
      if ( !covered )
      {
        possible = false;
        break;
      }
    }
    if ( !possible )
    {
      continue;
    }
    auto const lits = f.literals( f[id] );
    if ( unique.empty() )
    {
      free_total += lits;
      continue;
    }
    for ( std::size_t k = 0; k < leaves.size(); ++k )
    {
      charge[k] += serves[k] ? lits : 0;
    }
  }
  std::int64_t total = free_total;
  for ( std::size_t k = 0; k < leaves.size(); ++k )
  {
    total += std::max<std::int64_t>( 0, charge[k] - f.literals( leaves[k] ) );
  }
  return total;
}

/* A cheaper, looser bound that splits over trees: cubes without unique
   minterms, plus per leaf the cubes it could help remove less the leaf. */
std::int64_t free_literals( cover const& f )
{
  std::int64_t total = 0;
  for ( auto id : f.ids() )
  {
    total += f.unique_count( id ) == 0 ? f.literals( f[id] ) : 0;
  }
  return total;
}

std::int64_t leaf_bound( cover const& f, sct const& tree )
{
  std::int64_t total = 0;
  std::vector<cube> seen;
  for ( auto const& l : tree.leaves )
  {
    if ( std::find( seen.begin(), seen.end(), l.leaf ) != seen.end() )
    {
      continue;
    }
    seen.push_back( l.leaf );
    std::int64_t charge = 0;
    for ( auto id : removal_candidates( f, { l.leaf } ) )
    {
      auto const unique = f.unique_minterms( id );
      if ( std::any_of( unique.begin(), unique.end(), [&]( minterm const& t ) { return l.leaf.covers( t ); } ) )
      {
        charge += f.literals( f[id] );
      }
    }
    total += std::max<std::int64_t>( 0, charge - f.literals( l.leaf ) );
  }
  return total;
}

// EICs of the leaves actually inserted, which can be fewer than the root of their tree
solution to_solution( cover const& f, reduction_estimate const& estimate, eic_set const& prior )
{
  solution s{ estimate.inserted, estimate.removed, 0, {} };
  for ( auto const& leaf : estimate.inserted )
  {
    s.eics = eic_union( s.eics, cube_insertion_eics( leaf, f, prior ) );
  }
  normalize( s, f.counting() );
  return s;
}

template<class Fn>
void for_indices( std::size_t count, execution policy, Fn&& fn )
{
  auto const total = static_cast<std::int64_t>( count );
  if ( policy == execution::parallel )
  {
#pragma omp parallel for schedule( dynamic, 1 )
    for ( std::int64_t k = 0; k < total; ++k )
    {
      fn( static_cast<std::size_t>( k ) );
    }
  }
  else
  {
    for ( std::int64_t k = 0; k < total; ++k )
    {
      fn( static_cast<std::size_t>( k ) );
    }
  }
}

std::size_t fraction_count( double fraction, std::size_t total )
{
  auto const k = static_cast<std::size_t>( std::ceil( fraction * static_cast<double>( total ) - 1e-9 ) );
  return std::min( k, total );
}

} // namespace

insertion_candidates combine_and_estimate( cover const& f, std::vector<sct>& scts, eic_set const& prior,
                                          insertion_options const& options )
{
  auto const counting = f.counting();
  std::vector<reduction_estimate> estimates( scts.size() );
  for_indices( scts.size(), options.policy, [&]( std::size_t k ) {
    estimates[k] = estimate_reduction( f, scts[k], options.exhaustive_leaf_limit );
  } );
  for ( std::size_t k = 0; k < scts.size(); ++k )
  {
    scts[k].estimated_reduction = estimates[k].reduction;
  }

  insertion_candidates result;
  std::vector<std::size_t> singles;
  std::optional<std::size_t> best_single;
  for ( std::size_t k = 0; k < scts.size(); ++k )
  {
    if ( scts[k].root.size() != 1 )
    {
      continue;
    }
    singles.push_back( k );
    if ( !best_single || better_estimate( estimates[k], estimates[*best_single], counting ) )
    {
      best_single = k;
    }
  }
  if ( best_single )
  {
    result.one_error = to_solution( f, estimates[*best_single], prior );
  }

  std::stable_sort( singles.begin(), singles.end(), [&]( std::size_t a, std::size_t b ) {
    return scts[a].estimated_reduction > scts[b].estimated_reduction;
  } );
  auto const top = fraction_count( options.top_fraction, singles.size() );
  auto const partners = fraction_count( options.partner_fraction, singles.size() );
  std::vector<sct> pairs;
  std::vector<std::int64_t> pair_bounds;
  auto const free = free_literals( f );
  std::vector<std::int64_t> tree_bounds( singles.size() );
  for_indices( std::min( partners, singles.size() ), options.policy,
               [&]( std::size_t k ) { tree_bounds[k] = leaf_bound( f, scts[singles[k]] ); } );
  for ( std::size_t i = 0; i < top; ++i )
  {
    for ( std::size_t j = i + 1; j < partners; ++j )
    {
      auto const& a = scts[singles[i]];
      auto const& b = scts[singles[j]];
      pair_bounds.push_back( free + tree_bounds[i] + tree_bounds[j] );
      sct combined{ eic_union( a.root, b.root ), a.leaves, 0 };
      for ( auto const& leaf : b.leaves )
      {
        if ( std::find( combined.leaves.begin(), combined.leaves.end(), leaf ) == combined.leaves.end() )
        {
          combined.leaves.push_back( leaf );
        }
      }
      pairs.push_back( std::move( combined ) );
    }
  }
  /* Pairs are estimated in blocks; a pair whose bound is below the best so
     far cannot replace it and is skipped. The outcome equals estimating all. */
  std::optional<reduction_estimate> best_pair;
  std::size_t const block = 64;
  for ( std::size_t first = 0; first < pairs.size(); first += block )
  {
    auto const count = std::min( block, pairs.size() - first );
    std::vector<std::optional<reduction_estimate>> found( count );
    for_indices( count, options.policy, [&]( std::size_t k ) {
      auto const& pair = pairs[first + k];
      if ( best_pair && ( pair_bounds[first + k] < best_pair->reduction || reduction_bound( f, pair ) < best_pair->reduction ) )
      {
        return;
      }
      found[k] = estimate_reduction( f, pair, options.exhaustive_leaf_limit );
    } );
    for ( auto& e : found )
    {
      if ( e && ( !best_pair || better_estimate( *e, *best_pair, counting ) ) )
      {
        best_pair = std::move( e );
      }
    }
  }

  // then the generated two-EIC trees; only a strictly better candidate replaces the current one
  for ( std::size_t k = 0; k < scts.size(); ++k )
  {
    if ( scts[k].root.size() == 2 && ( !best_pair || better_estimate( estimates[k], *best_pair, counting ) ) )
    {
      best_pair = estimates[k];
    }
  }
  if ( best_pair )
  {
    result.two_error = to_solution( f, *best_pair, prior );
  }
  return result;
}

insertion_candidates cube_insertion( cover const& f, int max_eics, solution const& base,
                                     insertion_options const& options )
{
  auto trees = generate_scts( f, max_eics, base.eics, options.policy );
  augment( trees );
  auto candidates = combine_and_estimate( f, trees, base.eics, options );
  auto const counting = f.counting();
  if ( candidates.one_error )
  {
    candidates.one_error = update_solution( *candidates.one_error, base, counting );
  }
  if ( candidates.two_error )
  {
    candidates.two_error = update_solution( *candidates.two_error, base, counting );
  }
  return candidates;
}

} // namespace sopals

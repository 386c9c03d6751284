#include <sopals/cube_removal.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <optional>

namespace sopals
{

namespace
{

template<class Excluded>
eic_set unique_inputs( cube_id id, cover const& f, Excluded&& excluded )
{
  if ( !f.alive( id ) )
  {
    throw error( fmt::format( "cube id {} is not in the cover", id ) );
  }
  eic_set result;
  auto const& c = f[id];
  if ( f.unique_count( id ) == 0 )
  {
    return result;
  }
  for_each_assignment( c, f.num_inputs(), [&]( std::uint64_t v ) {
    if ( excluded( v ) )
    {
      return;
    }
    for ( auto outs = c.outputs; outs != 0; outs &= outs - 1 )
    {
      if ( f.cover_count( v, static_cast<std::uint32_t>( std::countr_zero( outs ) ) ) == 1 )
      {
        result.push_back( v );
        return;
      }
    }
  } );
  return result;
}

} // namespace

eic_set get_cube_eic( cube_id id, cover const& f, eic_set const& new_eic )
{
  return unique_inputs( id, f, [&]( std::uint64_t v ) { return eic_contains( new_eic, v ); } );
}

eic_set get_cube_eic( cube_id id, cover const& f, assignment_set const& new_eic )
{
  return unique_inputs( id, f, [&]( std::uint64_t v ) { return new_eic.contains( v ); } );
}

double removal_gain( int literals, std::size_t eic_count ) noexcept
{
  return static_cast<double>( literals ) / std::max( 0.01, static_cast<double>( eic_count ) );
}

eic_set update_eics( eic_set const& new_eic, eic_set const& best_eic, cover const& f_after, cover const& original )
{
  eic_set result;
  for ( auto v : eic_union( new_eic, best_eic ) )
  {
    if ( f_after.output_vector( v ) != original.output_vector( v ) )
    {
      result.push_back( v );
    }
  }
  return result;
}

solution cube_removal( cover& f, std::uint64_t budget, solution const& base, cover const& original,
                       std::vector<removal_step>* steps )
{
  auto const n = f.num_inputs();
  assignment_set new_eic( n, base.eics );
  std::vector<std::optional<std::size_t>> cached( f.slot_count() );
  auto eic_count = [&]( cube_id id ) {
    if ( !cached[id] )
    {
      cached[id] = get_cube_eic( id, f, new_eic ).size();
    }
    return *cached[id];
  };

  std::vector<std::pair<cube, cube_id>> removed;
  while ( true )
  {
    std::optional<cube_id> best;
    double best_gain = 0.0;
    std::size_t best_count = 0;
    for ( auto id : f.ids() )
    {
      auto const lits = f.literals( f[id] );
      if ( lits == 0 )
      {
        continue;
      }
      auto const k = eic_count( id );
      if ( k > budget )
      {
        continue;
      }
      auto const gain = removal_gain( lits, k );
      if ( !best || gain > best_gain )
      {
        best = id;
        best_gain = gain;
        best_count = k;
      }
    }
    if ( !best )
    {
      break;
    }

    auto const best_eic = get_cube_eic( *best, f, new_eic );
    cube const c = f[*best];
    f.remove( *best );
    removed.emplace_back( c, *best );
    budget -= best_count;
    for ( auto v : best_eic )
    {
      new_eic.insert( v );
    }
    // an inserted cube taken out again can correct errors it introduced earlier
    if ( !base.inserted.empty() )
    {
      for_each_assignment( c, n, [&]( std::uint64_t v ) {
        if ( new_eic.contains( v ) && !eic_contains( best_eic, v ) &&
             f.output_vector( v ) == original.output_vector( v ) )
        {
          new_eic.erase( v );
        }
      } );
    }
    if ( steps )
    {
      steps->push_back( { c, f.literals( c ), best_count, best_gain, budget } );
    }

    // only cubes sharing inputs with the removed one see different unique sets or EICs
    for ( auto id : f.ids() )
    {
      if ( f[id].inputs_intersect( c ) )
      {
        cached[id].reset();
      }
    }
  }

  for ( auto it = removed.rbegin(); it != removed.rend(); ++it )
  {
    f.insert_at( it->first, it->second );
  }

  solution part;
  for ( auto const& [c, id] : removed )
  {
    part.removed.push_back( c );
  }
  auto result = update_solution( part, base, f.counting() );
  result.eics = new_eic.members();
  return result;
}

} // namespace sopals

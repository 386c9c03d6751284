#include <sopals/solution.hpp>

#include <fmt/format.h>

#include <algorithm>

namespace sopals
{

std::int64_t literal_sum( std::vector<cube> const& cubes, literal_counting counting ) noexcept
{
  std::int64_t sum = 0;
  for ( auto const& c : cubes )
  {
    sum += literal_count( c, counting );
  }
  return sum;
}

void normalize( solution& s, literal_counting counting )
{
  std::sort( s.inserted.begin(), s.inserted.end(), pattern_less{} );
  std::sort( s.removed.begin(), s.removed.end(), pattern_less{} );
  s.reduction = literal_sum( s.removed, counting ) - literal_sum( s.inserted, counting );
}

namespace
{

bool erase_cube( std::vector<cube>& cubes, cube const& c )
{
  if ( auto it = std::find( cubes.begin(), cubes.end(), c ); it != cubes.end() )
  {
    cubes.erase( it );
    return true;
  }
  return false;
}

} // namespace

solution update_solution( solution const& part, solution const& base, literal_counting counting )
{
  if ( !eic_disjoint( part.eics, base.eics ) )
  {
    throw error( "solution update with overlapping EIC sets" );
  }
  solution merged = base;
  for ( auto const& r : part.removed )
  {
    if ( !erase_cube( merged.inserted, r ) )
    {
      merged.removed.push_back( r );
    }
  }
  for ( auto const& x : part.inserted )
  {
    if ( !erase_cube( merged.removed, x ) )
    {
      merged.inserted.push_back( x );
    }
  }
  merged.eics = eic_union( base.eics, part.eics );
  normalize( merged, counting );
  return merged;
}

namespace
{

std::strong_ordering compare_lists( std::vector<cube> const& a, std::vector<cube> const& b )
{
  return std::lexicographical_compare_three_way( a.begin(), a.end(), b.begin(), b.end(), compare_patterns );
}

} // namespace

bool ranks_before( solution const& a, solution const& b, literal_counting counting )
{
  if ( a.reduction != b.reduction )
  {
    return a.reduction > b.reduction;
  }
  if ( a.eics.size() != b.eics.size() )
  {
    return a.eics.size() < b.eics.size();
  }
  auto const la = literal_sum( a.inserted, counting );
  auto const lb = literal_sum( b.inserted, counting );
  if ( la != lb )
  {
    return la < lb;
  }
  if ( auto c = compare_lists( a.inserted, b.inserted ); c != 0 )
  {
    return c < 0;
  }
  if ( auto c = compare_lists( a.removed, b.removed ); c != 0 )
  {
    return c < 0;
  }
  return a.eics < b.eics;
}

std::string describe( solution const& s, int num_inputs, int num_outputs )
{
  std::vector<std::string> ins;
  std::vector<std::string> rem;
  std::vector<std::string> eics;
  for ( auto const& c : s.inserted )
  {
    ins.push_back( to_string( c, num_inputs, num_outputs ) );
  }
  for ( auto const& c : s.removed )
  {
    rem.push_back( to_string( c, num_inputs, num_outputs ) );
  }
  for ( auto v : s.eics )
  {
    eics.push_back( assignment_string( v, num_inputs ) );
  }
  return fmt::format( "+[{}] -[{}] reduction {} eics {{{}}}", fmt::join( ins, " " ), fmt::join( rem, " " ),
                      s.reduction, fmt::join( eics, "," ) );
}

} // namespace sopals

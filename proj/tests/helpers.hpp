#pragma once

#include "oracle.hpp"

#include <sopals/cover.hpp>
#include <sopals/cube.hpp>
#include <sopals/solution.hpp>

#include <string>
#include <vector>

namespace testing
{

inline sopals::cube cube_of( std::string const& text )
{
  return sopals::parse_cube( text, oracle::inputs_of( text ), oracle::outputs_of( text ) );
}

inline std::vector<sopals::cube> cubes_of( std::vector<std::string> const& texts )
{
  std::vector<sopals::cube> out;
  for ( auto const& t : texts )
  {
    out.push_back( cube_of( t ) );
  }
  return out;
}

inline sopals::cover cover_of( std::vector<std::string> const& texts, int n, int m,
                               sopals::literal_counting counting = sopals::literal_counting::inputs_and_outputs )
{
  auto const cubes = cubes_of( texts );
  return sopals::cover( n, m, cubes, counting );
}

inline std::vector<std::string> patterns_of( std::vector<sopals::cube> const& cubes, int n, int m )
{
  std::vector<std::string> out;
  for ( auto const& c : cubes )
  {
    out.push_back( sopals::to_string( c, n, m ) );
  }
  return out;
}

inline std::vector<std::string> patterns_of( sopals::cover const& f )
{
  return patterns_of( f.cubes(), f.num_inputs(), f.num_outputs() );
}

inline std::uint64_t assignment( std::string const& bits )
{
  return std::stoull( bits, nullptr, 2 );
}

inline std::vector<std::uint64_t> assignments( std::vector<std::string> const& list )
{
  std::vector<std::uint64_t> out;
  for ( auto const& b : list )
  {
    out.push_back( assignment( b ) );
  }
  return out;
}

// cover after applying s, as patterns: original order minus removals, then insertions
inline std::vector<std::string> apply( std::vector<std::string> cover, sopals::solution const& s, int n, int m )
{
  for ( auto const& r : patterns_of( s.removed, n, m ) )
  {
    std::erase( cover, r );
  }
  for ( auto const& x : patterns_of( s.inserted, n, m ) )
  {
    cover.push_back( x );
  }
  return cover;
}

inline std::vector<std::string> const f0{ "-10|1", "1-1|1" };
inline std::vector<std::string> const f1{ "-1-|1", "11-|1" };

} // namespace testing

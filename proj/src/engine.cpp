#include <sopals/engine.hpp>

#include <sopals/cube_removal.hpp>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>

namespace sopals
{

sop_change modify_sop( cover& f, solution const& s )
{
  sop_change change;
  for ( auto const& c : s.removed )
  {
    auto const id = f.find( c );
    if ( !id )
    {
      throw error( fmt::format( "solution removes {}, which is not in the cover",
                                to_string( c, f.num_inputs(), f.num_outputs() ) ) );
    }
    change.removed.emplace_back( c, *id );
  }
  for ( auto const& c : s.inserted )
  {
    if ( f.contains( c ) )
    {
      throw error( fmt::format( "solution inserts {}, which is already in the cover",
                                to_string( c, f.num_inputs(), f.num_outputs() ) ) );
    }
  }
  // highest slot first, so that restoring in reverse order rebuilds the tail
  std::sort( change.removed.begin(), change.removed.end(),
             []( auto const& a, auto const& b ) { return a.second > b.second; } );
  for ( auto const& [c, id] : change.removed )
  {
    f.remove( id );
  }
  for ( auto const& c : s.inserted )
  {
    f.insert( c );
    change.inserted.push_back( c );
  }
  return change;
}

void restore_sop( cover& f, sop_change const& change )
{
  for ( auto it = change.inserted.rbegin(); it != change.inserted.rend(); ++it )
  {
    f.remove( *it );
  }
  for ( auto it = change.removed.rbegin(); it != change.removed.rend(); ++it )
  {
    f.insert_at( it->first, it->second );
  }
}

std::vector<solution> top_solutions( std::vector<solution> const& level, std::size_t k, literal_counting counting )
{
  std::vector<solution> sorted = level;
  std::sort( sorted.begin(), sorted.end(),
             [&]( solution const& a, solution const& b ) { return ranks_before( a, b, counting ); } );
  if ( sorted.size() > k )
  {
    sorted.resize( k );
  }
  return sorted;
}

solution_ledger::solution_ledger( std::uint64_t max_errors, literal_counting counting )
    : max_errors_( max_errors ), counting_( counting ), levels_( 1 )
{
  levels_[0].push_back( solution{} );
}

bool solution_ledger::add( solution const& s )
{
  auto const i = static_cast<std::uint64_t>( s.eics.size() );
  if ( i > max_errors_ )
  {
    return false;
  }
  if ( levels_.size() <= i )
  {
    levels_.resize( i + 1 );
  }
  auto& level = levels_[i];
  if ( std::any_of( level.begin(), level.end(), [&]( solution const& t ) { return t.same_edits( s ); } ) )
  {
    return false;
  }
  level.push_back( s );
  return true;
}

void solution_ledger::offer( solution const& s )
{
  if ( s.eics.size() <= max_errors_ && ranks_before( s, best_, counting_ ) )
  {
    best_ = s;
  }
}

std::vector<solution> const& solution_ledger::level( std::uint64_t i ) const
{
  static std::vector<solution> const none;
  return i < levels_.size() ? levels_[i] : none;
}

solution search( cover const& f, std::uint64_t max_errors, engine_options const& options, engine_stats* stats )
{
  engine_stats local;
  auto& st = stats ? *stats : local;
  auto const counting = f.counting();
  cover work = f;
  solution_ledger ledger( max_errors, counting );

  for ( std::uint64_t i = 0; i <= max_errors; ++i )
  {
    if ( ledger.level( i ).empty() )
    {
      // later levels can only be filled from here or from the level before
      if ( ledger.level( i + 1 ).empty() )
      {
        break;
      }
      continue;
    }
    ++st.levels_visited;
    for ( auto const& s : top_solutions( ledger.level( i ), options.beam, counting ) )
    {
      auto const change = modify_sop( work, s );
      if ( i < max_errors )
      {
        auto const budget = static_cast<int>( std::min<std::uint64_t>( 2, max_errors - i ) );
        auto const found = cube_insertion( work, budget, s, options.insertion );
        ++st.insertion_rounds;
        for ( auto const* candidate : { &found.one_error, &found.two_error } )
        {
          if ( *candidate )
          {
            st.stored_solutions += ledger.add( **candidate ) ? 1 : 0;
            ledger.offer( **candidate );
          }
        }
      }
      auto const removal = cube_removal( work, max_errors - i, s, f );
      ++st.removal_rounds;
      ledger.offer( removal );
      restore_sop( work, change );
    }
    spdlog::debug( "level {}: {} solutions, best reduction {}", i, ledger.level( i ).size(),
                   ledger.best().reduction );
  }
  return ledger.best();
}

approximation approximate( cover const& f, std::uint64_t max_errors, engine_options const& options )
{
  approximation out{ cover( f.num_inputs(), f.num_outputs(), f.counting() ), {}, max_errors, 0, false, false, {}, {} };
  out.best = search( f, max_errors, options, &out.stats );

  cover modified = f;
  modify_sop( modified, out.best );
  std::optional<cover> dc;
  if ( options.dc_eic && !out.best.eics.empty() )
  {
    dc = dc_cover( f.num_inputs(), f.num_outputs(), out.best.eics, f.counting() );
  }
  auto approx = minimize( modified, dc ? &*dc : nullptr, options.minimizer );
  auto plain = minimize( f, nullptr, options.minimizer );
  out.minimized_literals = plain.result.total_literals();
  out.warnings = approx.warnings;
  out.warnings.insert( out.warnings.end(), plain.warnings.begin(), plain.warnings.end() );
  if ( plain.result.total_literals() <= approx.result.total_literals() )
  {
    out.result = std::move( plain.result );
    out.external_minimizer = plain.external;
    out.plain_minimization = true;
    out.best = solution{};
  }
  else
  {
    out.result = std::move( approx.result );
    out.external_minimizer = approx.external;
  }
  return out;
}

approximation approximate_er( cover const& f, double er, engine_options const& options )
{
  return approximate( f, noe_from_er( er, f.num_inputs() ), options );
}

} // namespace sopals

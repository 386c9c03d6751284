#include <sopals/minimizer.hpp>

#include <sopals/pla.hpp>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <cstdlib>
#include <fstream>

#include <unistd.h>

namespace sopals
{

cover dc_cover( int num_inputs, int num_outputs, eic_set const& inputs, literal_counting counting )
{
  cover dc( num_inputs, num_outputs, counting );
  std::uint64_t const all = num_outputs >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << num_outputs ) - 1u;
  for ( auto v : inputs )
  {
    dc.insert( cube{ input_mask( num_inputs ), v, all } );
  }
  return dc;
}

namespace
{

bool in_dc( cover const* dc, std::uint64_t v, std::uint32_t o )
{
  return dc && dc->cover_count( v, o ) != 0;
}

bool only_dc_unique( cover const& f, cube_id id, cover const* dc )
{
  if ( f.unique_count( id ) == 0 )
  {
    return true;
  }
  if ( !dc )
  {
    return false;
  }
  auto const& c = f[id];
  return for_each_assignment_until( c, f.num_inputs(), [&]( std::uint64_t v ) {
    for ( auto outs = c.outputs; outs != 0; outs &= outs - 1 )
    {
      auto const o = static_cast<std::uint32_t>( std::countr_zero( outs ) );
      if ( f.cover_count( v, o ) == 1 && !in_dc( dc, v, o ) )
      {
        return false;
      }
    }
    return true;
  } );
}

cover compact( cover const& f )
{
  auto const cubes = f.cubes();
  return cover( f.num_inputs(), f.num_outputs(), cubes, f.counting() );
}

} // namespace

cover make_irredundant( cover const& f, cover const* dc )
{
  cover work = f;
  while ( true )
  {
    std::optional<cube_id> drop;
    for ( auto id : work.ids() )
    {
      if ( ( !drop || work.literals( work[id] ) > work.literals( work[*drop] ) ) && only_dc_unique( work, id, dc ) )
      {
        drop = id;
      }
    }
    if ( !drop )
    {
      break;
    }
    work.remove( *drop );
  }
  return compact( work );
}

cover expand_pass( cover const& f, cover const* dc )
{
  cover work = f;
  auto const n = f.num_inputs();
  for ( auto id : f.ids() )
  {
    cube c = f[id];
    if ( !work.alive( id ) || work[id] != c )
    {
      continue;
    }
    for ( int i = 0; i < n; ++i )
    {
      auto const bit = input_bit( n, i );
      if ( ( c.care & bit ) == 0 )
      {
        continue;
      }
      cube const mirror{ c.care, c.value ^ bit, c.outputs };
      bool const legal = for_each_assignment_until( mirror, n, [&]( std::uint64_t v ) {
        for ( auto outs = c.outputs; outs != 0; outs &= outs - 1 )
        {
          auto const o = static_cast<std::uint32_t>( std::countr_zero( outs ) );
          if ( f.cover_count( v, o ) == 0 && !in_dc( dc, v, o ) )
          {
            return false;
          }
        }
        return true;
      } );
      if ( legal )
      {
        c.care &= ~bit;
        c.value &= ~bit;
      }
    }
    if ( c == f[id] )
    {
      continue;
    }
    work.remove( id );
    if ( !work.contains( c ) )
    {
      work.insert_at( c, id );
    }
  }
  return make_irredundant( work, dc );
}

std::optional<std::filesystem::path> resolve_espresso( minimizer_options const& options )
{
  if ( !options.allow_external )
  {
    return std::nullopt;
  }
  if ( options.espresso )
  {
    return options.espresso;
  }
  if ( auto const* env = std::getenv( espresso_env ); env && *env )
  {
    return std::filesystem::path( env );
  }
  return std::nullopt;
}

namespace
{

std::string shell_quote( std::string const& s )
{
  std::string out = "'";
  for ( char ch : s )
  {
    if ( ch == '\'' )
    {
      out += "'\\''";
    }
    else
    {
      out += ch;
    }
  }
  return out + "'";
}

std::string espresso_input( cover const& f, cover const* dc )
{
  auto const n = f.num_inputs();
  auto const m = f.num_outputs();
  auto const on = f.cubes();
  auto const off = dc ? dc->cubes() : std::vector<cube>{};
  std::string text = fmt::format( ".i {}\n.o {}\n.type fd\n.p {}\n", n, m, on.size() + off.size() );
  for ( auto const& c : on )
  {
    text += fmt::format( "{} {}\n", input_string( c, n ), output_string( c, m ) );
  }
  for ( auto const& c : off )
  {
    auto outs = output_string( c, m );
    for ( auto& ch : outs )
    {
      ch = ch == '1' ? '-' : '0';
    }
    text += fmt::format( "{} {}\n", input_string( c, n ), outs );
  }
  return text + ".e\n";
}

struct temp_dir
{
  std::filesystem::path path;

  temp_dir()
  {
    static std::atomic<unsigned> counter{ 0 };
    path = std::filesystem::temp_directory_path() / fmt::format( "sopals-{}-{}", ::getpid(), counter++ );
    std::filesystem::create_directories( path );
  }
  ~temp_dir()
  {
    std::error_code ec;
    std::filesystem::remove_all( path, ec );
  }
};

void check_equivalent( cover const& f, cover const& g, cover const* dc )
{
  auto const n = f.num_inputs();
  for ( std::uint64_t v = 0; v < ( std::uint64_t{ 1 } << n ); ++v )
  {
    auto diff = f.output_vector( v ) ^ g.output_vector( v );
    if ( dc )
    {
      diff &= ~dc->output_vector( v );
    }
    if ( diff != 0 )
    {
      throw error( fmt::format( "external minimizer changed the function at input {}", assignment_string( v, n ) ) );
    }
  }
}

} // namespace

cover run_espresso( std::filesystem::path const& tool, cover const& f, cover const* dc )
{
  temp_dir dir;
  auto const in = dir.path / "in.pla";
  auto const out = dir.path / "out.pla";
  {
    std::ofstream os( in );
    os << espresso_input( f, dc );
    if ( !os )
    {
      throw error( fmt::format( "cannot write {}", in.string() ) );
    }
  }
  auto const command = fmt::format( "{} {} > {} 2> {}", shell_quote( tool.string() ), shell_quote( in.string() ),
                                    shell_quote( out.string() ), shell_quote( ( dir.path / "err.txt" ).string() ) );
  if ( auto const status = std::system( command.c_str() ); status != 0 )
  {
    throw error( fmt::format( "{} exited with status {}", tool.string(), status ) );
  }
  auto const doc = read_pla( out );
  if ( doc.num_inputs != f.num_inputs() || doc.num_outputs != f.num_outputs() )
  {
    throw error( "external minimizer returned a cover of different dimensions" );
  }
  cover result( f.num_inputs(), f.num_outputs(), doc.cubes, f.counting() );
  check_equivalent( f, result, dc );
  return result;
}

minimize_result minimize( cover const& f, cover const* dc, minimizer_options const& options )
{
  minimize_result out{ cover( f.num_inputs(), f.num_outputs(), f.counting() ), false, {} };
  if ( auto const tool = resolve_espresso( options ) )
  {
    try
    {
      auto result = run_espresso( *tool, f, dc );
      if ( result.total_literals() <= f.total_literals() )
      {
        out.result = std::move( result );
        out.external = true;
        return out;
      }
      out.warnings.push_back( fmt::format( "external minimizer returned {} literals for a {}-literal cover",
                                           result.total_literals(), f.total_literals() ) );
    }
    catch ( std::exception const& e )
    {
      out.warnings.push_back( fmt::format( "external minimizer failed: {}", e.what() ) );
    }
    spdlog::warn( "{}; using the internal minimizer", out.warnings.back() );
  }
  out.result = expand_pass( f, dc );
  return out;
}

} // namespace sopals

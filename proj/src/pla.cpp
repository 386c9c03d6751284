#include <sopals/pla.hpp>

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace sopals
{

pla_parse_error::pla_parse_error( std::size_t line, std::string const& message )
    : error( fmt::format( "line {}: {}", line, message ) ), line_( line )
{
}

namespace
{

std::string_view trim( std::string_view s )
{
  auto const first = s.find_first_not_of( " \t\r\n" );
  if ( first == std::string_view::npos )
  {
    return {};
  }
  auto const last = s.find_last_not_of( " \t\r\n" );
  return s.substr( first, last - first + 1 );
}

std::vector<std::string> split_words( std::string_view s )
{
  std::vector<std::string> words;
  std::istringstream in{ std::string( s ) };
  std::string w;
  while ( in >> w )
  {
    words.push_back( w );
  }
  return words;
}

int parse_count( std::vector<std::string> const& words, std::size_t line, int limit )
{
  if ( words.size() < 2 )
  {
    throw pla_parse_error( line, fmt::format( "directive {} needs a value", words[0] ) );
  }
  int value{};
  auto const& w = words[1];
  auto [ptr, ec] = std::from_chars( w.data(), w.data() + w.size(), value );
  if ( ec != std::errc{} || ptr != w.data() + w.size() || value < 0 )
  {
    throw pla_parse_error( line, fmt::format( "bad value '{}' for {}", w, words[0] ) );
  }
  if ( value > limit )
  {
    throw pla_parse_error( line, fmt::format( "{} {} exceeds the supported maximum of {}", words[0], value, limit ) );
  }
  return value;
}

} // namespace

pla_document parse_pla( std::istream& in, pla_parse_options const& options )
{
  pla_document doc;
  bool have_inputs = false;
  bool have_outputs = false;
  std::size_t cube_lines = 0;
  std::size_t coerced_lines = 0;
  std::size_t line_no = 0;
  std::string raw;

  while ( std::getline( in, raw ) )
  {
    ++line_no;
    std::string_view line = raw;
    if ( auto hash = line.find( '#' ); hash != std::string_view::npos )
    {
      line = line.substr( 0, hash );
    }
    line = trim( line );
    if ( line.empty() )
    {
      continue;
    }

    if ( line.front() == '.' )
    {
      auto const words = split_words( line );
      auto const& d = words[0];
      if ( d == ".i" )
      {
        doc.num_inputs = parse_count( words, line_no, max_inputs );
        have_inputs = true;
      }
      else if ( d == ".o" )
      {
        doc.num_outputs = parse_count( words, line_no, max_outputs );
        have_outputs = true;
      }
      else if ( d == ".p" )
      {
        doc.declared_product_count = static_cast<std::size_t>( parse_count( words, line_no, 1 << 30 ) );
      }
      else if ( d == ".ilb" )
      {
        doc.input_labels.assign( words.begin() + 1, words.end() );
      }
      else if ( d == ".ob" )
      {
        doc.output_labels.assign( words.begin() + 1, words.end() );
      }
      else if ( d == ".type" )
      {
        std::string const t = words.size() > 1 ? words[1] : "";
        if ( t == "fd" )
        {
          doc.type = pla_type::fd;
        }
        else if ( t == "fr" || t == "fdr" )
        {
          doc.type = pla_type::fr;
        }
        else if ( t == "f" )
        {
          doc.type = pla_type::f;
        }
        else
        {
          throw pla_parse_error( line_no, fmt::format( "unsupported .type '{}'", t ) );
        }
      }
      else if ( d == ".e" || d == ".end" )
      {
        break;
      }
      else
      {
        doc.warnings.push_back( fmt::format( "line {}: directive {} ignored", line_no, d ) );
      }
      continue;
    }

    if ( !have_inputs || !have_outputs )
    {
      throw pla_parse_error( line_no, "cube line before .i and .o" );
    }
    ++cube_lines;

    std::string compact;
    compact.reserve( line.size() );
    for ( char ch : line )
    {
      if ( ch != ' ' && ch != '\t' && ch != '|' )
      {
        compact.push_back( ch );
      }
    }
    auto const n = doc.num_inputs;
    auto const m = doc.num_outputs;
    if ( static_cast<int>( compact.size() ) != n + m )
    {
      throw pla_parse_error( line_no, fmt::format( "pattern has {} positions, expected {}", compact.size(), n + m ) );
    }

    cube c;
    for ( int i = 0; i < n; ++i )
    {
      auto const bit = input_bit( n, i );
      switch ( compact[i] )
      {
      case '0':
        c.care |= bit;
        break;
      case '1':
        c.care |= bit;
        c.value |= bit;
        break;
      case '-':
        break;
      default:
        throw pla_parse_error( line_no, fmt::format( "illegal input character '{}'", compact[i] ) );
      }
    }
    bool coerced = false;
    for ( int j = 0; j < m; ++j )
    {
      char const ch = compact[n + j];
      switch ( ch )
      {
      case '1':
        c.outputs |= std::uint64_t{ 1 } << j;
        break;
      case '0':
        break;
      case '-':
      case '~':
      case '2':
        if ( options.strict )
        {
          throw pla_parse_error( line_no, fmt::format( "output don't-care '{}' rejected in strict mode", ch ) );
        }
        ++doc.coerced_outputs;
        coerced = true;
        break;
      default:
        throw pla_parse_error( line_no, fmt::format( "illegal output character '{}'", ch ) );
      }
    }
    if ( coerced )
    {
      ++coerced_lines;
    }
    if ( c.outputs != 0 )
    {
      doc.cubes.push_back( c );
    }
  }

  if ( !have_inputs || !have_outputs )
  {
    throw pla_parse_error( line_no, "missing .i or .o directive" );
  }
  if ( doc.declared_product_count && *doc.declared_product_count != cube_lines )
  {
    auto const msg = fmt::format( ".p declares {} products but {} cube lines were read", *doc.declared_product_count,
                                  cube_lines );
    if ( options.strict )
    {
      throw pla_parse_error( line_no, msg );
    }
    doc.warnings.push_back( msg );
  }
  if ( doc.coerced_outputs != 0 )
  {
    doc.warnings.push_back( fmt::format( "{} output don't-care position(s) on {} line(s) coerced to 0",
                                         doc.coerced_outputs, coerced_lines ) );
  }
  if ( !doc.input_labels.empty() && static_cast<int>( doc.input_labels.size() ) != doc.num_inputs )
  {
    doc.warnings.push_back( ".ilb label count does not match .i" );
  }
  if ( !doc.output_labels.empty() && static_cast<int>( doc.output_labels.size() ) != doc.num_outputs )
  {
    doc.warnings.push_back( ".ob label count does not match .o" );
  }
  return doc;
}

pla_document parse_pla( std::string_view text, pla_parse_options const& options )
{
  std::istringstream in{ std::string( text ) };
  return parse_pla( in, options );
}

pla_document read_pla( std::filesystem::path const& path, pla_parse_options const& options )
{
  std::ifstream in( path );
  if ( !in )
  {
    throw error( fmt::format( "cannot open {}", path.string() ) );
  }
  return parse_pla( in, options );
}

std::string write_pla( pla_document const& doc )
{
  std::string out = fmt::format( ".i {}\n.o {}\n", doc.num_inputs, doc.num_outputs );
  if ( !doc.input_labels.empty() )
  {
    out += fmt::format( ".ilb {}\n", fmt::join( doc.input_labels, " " ) );
  }
  if ( !doc.output_labels.empty() )
  {
    out += fmt::format( ".ob {}\n", fmt::join( doc.output_labels, " " ) );
  }
  out += fmt::format( ".p {}\n", doc.cubes.size() );
  for ( auto const& c : doc.cubes )
  {
    out += input_string( c, doc.num_inputs );
    out += ' ';
    out += output_string( c, doc.num_outputs );
    out += '\n';
  }
  out += ".e";
  return out;
}

void write_pla( std::filesystem::path const& path, pla_document const& doc )
{
  std::ofstream out( path );
  if ( !out )
  {
    throw error( fmt::format( "cannot write {}", path.string() ) );
  }
  out << write_pla( doc ) << '\n';
}

pla_document make_document( int num_inputs, int num_outputs, std::vector<cube> cubes )
{
  pla_document doc;
  doc.num_inputs = num_inputs;
  doc.num_outputs = num_outputs;
  doc.cubes = std::move( cubes );
  return doc;
}

} // namespace sopals

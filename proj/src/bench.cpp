#include <sopals/bench.hpp>

#include <sopals/error_model.hpp>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <chrono>

namespace sopals
{

std::uint64_t threshold::budget( int num_inputs ) const
{
  if ( noe )
  {
    return *noe;
  }
  if ( er )
  {
    return noe_from_er( *er, num_inputs );
  }
  throw error( "a threshold needs either a NoE or an error rate" );
}

std::string threshold::label() const
{
  if ( noe )
  {
    return fmt::format( "noe {}", *noe );
  }
  if ( er )
  {
    return fmt::format( "er {}", *er );
  }
  return "none";
}

std::vector<suite_entry> table1_suite()
{
  struct row
  {
    char const* name;
    std::int64_t original;
    std::int64_t ours;
  };
  static constexpr row rows[] = {
      { "con1", 32, 24 },      { "rd73", 903, 556 },     { "inc", 198, 125 },     { "5xp1", 347, 202 },
      { "sqrt8", 188, 83 },    { "rd84", 2070, 1511 },   { "misex1", 96, 77 },    { "clip", 793, 584 },
      { "apex4", 5419, 5024 }, { "sao2", 496, 165 },     { "ex1010", 2718, 2636 }, { "alu4", 5087, 4847 },
      { "misex3", 7784, 7242 }, { "table3", 2644, 2347 }, { "misex3c", 1561, 1115 }, { "b12", 207, 207 },
      { "t481", 5233, 4975 },  { "table5", 2501, 2270 } };
  std::vector<suite_entry> result;
  for ( auto const& r : rows )
  {
    result.push_back( { r.name, threshold{ 16, std::nullopt }, r.original, r.ours, 16 } );
  }
  return result;
}

std::vector<suite_entry> table2_suite()
{
  struct row
  {
    char const* name;
    double er;
    std::uint64_t noe;
    std::int64_t original;
    std::int64_t approx;
  };
  static constexpr row rows[] = {
      { "sao2", 0.01, 10, 496, 274 },      { "sao2", 0.03, 30, 496, 79 },       { "sao2", 0.05, 51, 496, 37 },
      { "ex1010", 0.01, 10, 2718, 2659 },  { "ex1010", 0.03, 30, 2718, 2588 },  { "ex1010", 0.05, 51, 2718, 2511 },
      { "alu4", 0.01, 163, 5087, 3730 },   { "alu4", 0.03, 491, 5087, 2693 },   { "alu4", 0.05, 819, 5087, 2139 },
      { "b12", 0.01, 372, 207, 193 },      { "b12", 0.03, 983, 207, 170 },      { "b12", 0.05, 1638, 207, 153 },
      { "t481", 0.01, 655, 5233, 1992 },   { "t481", 0.03, 1966, 5233, 942 },   { "t481", 0.05, 3276, 5233, 578 },
      { "table5", 0.01, 1310, 2501, 720 }, { "table5", 0.03, 3932, 2501, 280 }, { "table5", 0.05, 6553, 2501, 153 } };
  std::vector<suite_entry> result;
  for ( auto const& r : rows )
  {
    result.push_back( { r.name, threshold{ std::nullopt, r.er }, r.original, r.approx, r.noe } );
  }
  return result;
}

std::vector<suite_entry> suite_by_name( std::string const& name )
{
  if ( name == "table1" )
  {
    return table1_suite();
  }
  if ( name == "table2" )
  {
    return table2_suite();
  }
  if ( name == "all" )
  {
    auto all = table1_suite();
    auto two = table2_suite();
    all.insert( all.end(), two.begin(), two.end() );
    return all;
  }
  throw error( fmt::format( "unknown suite '{}' (expected table1, table2 or all)", name ) );
}

namespace
{

char const* counting_name( literal_counting counting )
{
  return counting == literal_counting::inputs_only ? "inputs" : "inputs+outputs";
}

} // namespace

circuit_report run_document( std::string const& name, pla_document const& doc, threshold const& limit,
                             run_options const& options, cover* result )
{
  circuit_report r;
  r.circuit = name;
  r.inputs = doc.num_inputs;
  r.outputs = doc.num_outputs;
  r.limit = limit.label();
  r.counting = counting_name( options.counting );
  r.coerced_outputs = doc.coerced_outputs;
  r.warnings = doc.warnings;

  cover const original( doc.num_inputs, doc.num_outputs, doc.cubes, options.counting, &r.warnings );
  r.cubes = original.size();
  r.noe = limit.budget( doc.num_inputs );
  r.original_literals = original.total_literals();

  auto const start = std::chrono::steady_clock::now();
  auto approx = approximate( original, r.noe, options.engine );
  r.seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();

  r.minimized_literals = approx.minimized_literals;
  r.approximate_literals = approx.result.total_literals();
  r.literal_ratio = r.original_literals == 0 ? 1.0
                                             : static_cast<double>( r.approximate_literals ) /
                                                   static_cast<double>( r.original_literals );
  r.minimizer = approx.external_minimizer ? "external" : "internal";
  r.plain_minimization = approx.plain_minimization;
  r.search_reduction = approx.best.reduction;
  r.warnings.insert( r.warnings.end(), approx.warnings.begin(), approx.warnings.end() );

  auto const measure = exhaustive_error_rate( original, approx.result );
  r.eic_count = measure.eic_count;
  r.measured_er = measure.er;
  r.verified = measure.eic_count <= r.noe && r.approximate_literals <= r.original_literals;
  if ( !r.verified )
  {
    r.status = "verification failed";
    spdlog::error( "{}: {} EICs for a budget of {}, {} literals from {}", name, r.eic_count, r.noe,
                   r.approximate_literals, r.original_literals );
  }
  if ( result )
  {
    *result = std::move( approx.result );
  }
  return r;
}

circuit_report run_circuit( std::filesystem::path const& path, suite_entry const& entry, run_options const& options )
{
  circuit_report r;
  try
  {
    auto const doc = read_pla( path, options.parse );
    r = run_document( entry.circuit, doc, entry.limit, options );
  }
  catch ( std::exception const& e )
  {
    r.circuit = entry.circuit;
    r.limit = entry.limit.label();
    r.counting = counting_name( options.counting );
    r.status = fmt::format( "error: {}", e.what() );
    spdlog::error( "{}: {}", entry.circuit, e.what() );
  }
  r.published_original_literals = entry.published_original_literals;
  r.published_literals = entry.published_literals;
  r.published_noe = entry.published_noe;
  return r;
}

std::vector<circuit_report> run_suite( std::filesystem::path const& dir, std::vector<suite_entry> const& entries,
                                       run_options const& options, std::vector<std::string>* missing )
{
  std::vector<circuit_report> rows;
  for ( auto const& entry : entries )
  {
    auto const path = dir / ( entry.circuit + ".pla" );
    if ( !std::filesystem::exists( path ) )
    {
      spdlog::warn( "{} not found, skipped", path.string() );
      if ( missing )
      {
        missing->push_back( entry.circuit );
      }
      continue;
    }
    spdlog::info( "{} at {}", entry.circuit, entry.limit.label() );
    rows.push_back( run_circuit( path, entry, options ) );
  }
  return rows;
}

nlohmann::json to_json( circuit_report const& r, bool with_timing )
{
  nlohmann::json j;
  j["circuit"] = r.circuit;
  j["status"] = r.status;
  j["inputs"] = r.inputs;
  j["outputs"] = r.outputs;
  j["cubes"] = r.cubes;
  j["threshold"] = r.limit;
  j["noe"] = r.noe;
  j["original_literals"] = r.original_literals;
  j["minimized_literals"] = r.minimized_literals;
  j["approximate_literals"] = r.approximate_literals;
  j["literal_ratio"] = r.literal_ratio;
  j["eic_count"] = r.eic_count;
  j["measured_er"] = r.measured_er;
  j["verified"] = r.verified;
  j["literal_counting"] = r.counting;
  j["minimizer"] = r.minimizer;
  j["plain_minimization"] = r.plain_minimization;
  j["coerced_outputs"] = r.coerced_outputs;
  j["search_reduction"] = r.search_reduction;
  j["published_original_literals"] = r.published_original_literals ? nlohmann::json( *r.published_original_literals ) : nlohmann::json();
  j["published_literals"] = r.published_literals ? nlohmann::json( *r.published_literals ) : nlohmann::json();
  j["published_noe"] = r.published_noe ? nlohmann::json( *r.published_noe ) : nlohmann::json();
  j["warnings"] = r.warnings;
  if ( with_timing )
  {
    j["seconds"] = r.seconds;
  }
  return j;
}

std::string format_table( std::vector<circuit_report> const& rows )
{
  std::string out = fmt::format( "{:<10} {:>3} {:>3} {:<10} {:>6} {:>9} {:>9} {:>9} {:>6} {:>6} {:>9} {:>9} {:>8}  {}\n",
                                 "circuit", "i", "o", "threshold", "noe", "original", "minimized", "approx", "ratio",
                                 "eics", "published", "pub_noe", "seconds", "status" );
  auto opt = []( auto const& v ) { return v ? fmt::format( "{}", *v ) : std::string( "-" ); };
  for ( auto const& r : rows )
  {
    out += fmt::format( "{:<10} {:>3} {:>3} {:<10} {:>6} {:>9} {:>9} {:>9} {:>6.3f} {:>6} {:>9} {:>9} {:>8.2f}  {}\n",
                        r.circuit, r.inputs, r.outputs, r.limit, r.noe, r.original_literals, r.minimized_literals,
                        r.approximate_literals, r.literal_ratio, r.eic_count, opt( r.published_literals ),
                        opt( r.published_noe ), r.seconds, r.status );
  }
  return out;
}

bool all_verified( std::vector<circuit_report> const& rows )
{
  for ( auto const& r : rows )
  {
    if ( r.status != "ok" || !r.verified )
    {
      return false;
    }
  }
  return true;
}

} // namespace sopals

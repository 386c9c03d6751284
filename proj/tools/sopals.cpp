#include <sopals/bench.hpp>
#include <sopals/engine.hpp>
#include <sopals/error_model.hpp>
#include <sopals/pla.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>

namespace
{

using namespace sopals;

struct common_flags
{
  bool strict{};
  bool inputs_only{};
  bool dc_eic{};
  double top_pct{ 25.0 };
  double partner_pct{ 80.0 };
  bool no_external{};
  std::string espresso;
  bool serial{};
  std::string log_level{ "warn" };
};

void add_common( CLI::App& app, common_flags& f )
{
  app.add_flag( "--strict", f.strict, "Reject output don't-cares and .p mismatches" );
  app.add_flag( "--count-inputs-only", f.inputs_only, "Count input literals only" );
  app.add_flag( "--dc-eic", f.dc_eic, "Pass the EICs to the final minimization as don't-cares" );
  app.add_option( "--sct-top-pct", f.top_pct, "Rank limit (percent) for the first tree of a combined pair" )
      ->check( CLI::Range( 0.0, 100.0 ) );
  app.add_option( "--sct-partner-pct", f.partner_pct, "Rank limit (percent) for the second tree of a combined pair" )
      ->check( CLI::Range( 0.0, 100.0 ) );
  app.add_flag( "--no-external", f.no_external, "Never run an external Espresso" );
  app.add_option( "--espresso", f.espresso,
                  fmt::format( "Espresso executable (default: ${} when set)", espresso_env ) );
  app.add_flag( "--serial", f.serial, "Use the serial kernels" );
  app.add_option( "--log-level", f.log_level, "trace, debug, info, warn, error or off" );
}

run_options make_options( common_flags const& f )
{
  run_options o;
  o.counting = f.inputs_only ? literal_counting::inputs_only : literal_counting::inputs_and_outputs;
  o.parse.strict = f.strict;
  o.engine.dc_eic = f.dc_eic;
  o.engine.insertion.top_fraction = f.top_pct / 100.0;
  o.engine.insertion.partner_fraction = f.partner_pct / 100.0;
  o.engine.insertion.policy = f.serial ? execution::serial : execution::parallel;
  o.engine.minimizer.allow_external = !f.no_external;
  if ( !f.espresso.empty() )
  {
    o.engine.minimizer.espresso = f.espresso;
  }
  return o;
}

void setup_logging( std::string const& level )
{
  auto logger = spdlog::stderr_color_mt( "sopals" );
  spdlog::set_default_logger( logger );
  spdlog::set_level( spdlog::level::from_str( level ) );
}

void print_report( circuit_report const& r, bool json )
{
  if ( json )
  {
    std::cout << to_json( r ).dump() << '\n';
    return;
  }
  std::cout << fmt::format( "circuit              {}\n", r.circuit );
  std::cout << fmt::format( "inputs/outputs       {}/{}\n", r.inputs, r.outputs );
  std::cout << fmt::format( "threshold            {} (NoE {})\n", r.limit, r.noe );
  std::cout << fmt::format( "literal counting     {}\n", r.counting );
  std::cout << fmt::format( "original literals    {}\n", r.original_literals );
  std::cout << fmt::format( "minimized literals   {}\n", r.minimized_literals );
  std::cout << fmt::format( "approximate literals {}\n", r.approximate_literals );
  std::cout << fmt::format( "literal ratio        {:.3f}\n", r.literal_ratio );
  std::cout << fmt::format( "EICs                 {}\n", r.eic_count );
  std::cout << fmt::format( "measured ER          {:.6f}\n", r.measured_er );
  std::cout << fmt::format( "minimizer            {}\n", r.minimizer );
  std::cout << fmt::format( "verified             {}\n", r.verified ? "yes" : "no" );
  std::cout << fmt::format( "seconds              {:.3f}\n", r.seconds );
  for ( auto const& w : r.warnings )
  {
    std::cout << fmt::format( "warning: {}\n", w );
  }
}

int cmd_approximate( std::string const& input, std::optional<double> er, std::optional<std::uint64_t> noe,
                     std::string const& output, bool json, common_flags const& flags )
{
  auto const options = make_options( flags );
  auto const doc = read_pla( input, options.parse );
  threshold limit{ noe, er };
  if ( !noe && !er )
  {
    limit.noe = 0;
  }
  cover result( doc.num_inputs, doc.num_outputs, options.counting );
  auto const name = std::filesystem::path( input ).stem().string();
  auto const report = run_document( name, doc, limit, options, &result );
  if ( !output.empty() )
  {
    auto out = make_document( doc.num_inputs, doc.num_outputs, result.cubes() );
    out.input_labels = doc.input_labels;
    out.output_labels = doc.output_labels;
    write_pla( output, out );
  }
  print_report( report, json );
  return report.verified ? 0 : 3;
}

int cmd_verify( std::string const& original_path, std::string const& approx_path, std::uint64_t samples,
                std::uint64_t seed, bool json, common_flags const& flags )
{
  auto const options = make_options( flags );
  auto const a = read_pla( original_path, options.parse );
  auto const b = read_pla( approx_path, options.parse );
  if ( a.num_inputs != b.num_inputs || a.num_outputs != b.num_outputs )
  {
    throw error( fmt::format( "dimension mismatch: {}x{} against {}x{}", a.num_inputs, a.num_outputs, b.num_inputs,
                              b.num_outputs ) );
  }
  nlohmann::json j;
  j["inputs"] = a.num_inputs;
  j["outputs"] = a.num_outputs;
  if ( samples == 0 && a.num_inputs <= max_exhaustive_inputs )
  {
    auto const m = exhaustive_error_rate( a.cubes, b.cubes, a.num_inputs, a.num_outputs );
    j["method"] = "exhaustive";
    j["eic_count"] = m.eic_count;
    j["er"] = m.er;
    j["output_flips"] = m.output_flips;
  }
  else
  {
    auto const s = sampled_error_rate( a.cubes, b.cubes, a.num_inputs, samples == 0 ? 1000000 : samples, seed );
    j["method"] = s.exhaustive ? "exhaustive" : "sampled";
    j["samples"] = s.samples;
    j["eic_count"] = s.errors;
    j["er"] = s.er;
    j["er_lower"] = s.lower;
    j["er_upper"] = s.upper;
  }
  if ( json )
  {
    std::cout << j.dump() << '\n';
  }
  else
  {
    std::cout << fmt::format( "method      {}\n", j["method"].get<std::string>() );
    std::cout << fmt::format( "EICs        {}\n", j["eic_count"].get<std::uint64_t>() );
    std::cout << fmt::format( "ER          {:.6f}\n", j["er"].get<double>() );
    if ( j.contains( "output_flips" ) )
    {
      auto const flips = j["output_flips"].get<std::vector<std::uint64_t>>();
      std::cout << fmt::format( "flips       {}\n", fmt::join( flips, " " ) );
    }
    else
    {
      std::cout << fmt::format( "95% range   [{:.6f}, {:.6f}] over {} samples\n", j["er_lower"].get<double>(),
                                j["er_upper"].get<double>(), j["samples"].get<std::uint64_t>() );
    }
  }
  return 0;
}

int cmd_bench( std::string const& dir, std::string const& suite, std::string const& report_path, bool json,
               common_flags const& flags )
{
  auto const options = make_options( flags );
  std::vector<std::string> missing;
  auto const rows = run_suite( dir, suite_by_name( suite ), options, &missing );
  if ( json )
  {
    for ( auto const& r : rows )
    {
      std::cout << to_json( r ).dump() << '\n';
    }
  }
  else
  {
    std::cout << format_table( rows );
    if ( !missing.empty() )
    {
      std::cout << fmt::format( "skipped (no PLA file): {}\n", fmt::join( missing, " " ) );
    }
  }
  if ( !report_path.empty() )
  {
    std::ofstream os( report_path );
    for ( auto const& r : rows )
    {
      os << to_json( r ).dump() << '\n';
    }
  }
  return all_verified( rows ) ? 0 : 3;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Approximate two-level logic synthesis under an error-rate budget" };
  app.require_subcommand( 1 );
  common_flags flags;

  auto* approx = app.add_subcommand( "approximate", "Approximate a PLA within an error budget" );
  std::string input;
  std::string output;
  std::optional<double> er;
  std::optional<std::uint64_t> noe;
  bool json = false;
  approx->add_option( "input", input, "Input PLA" )->required()->check( CLI::ExistingFile );
  auto* er_opt = approx->add_option( "--er", er, "Error rate threshold in [0, 1]" )->check( CLI::Range( 0.0, 1.0 ) );
  approx->add_option( "--noe", noe, "Maximum number of erroneous input combinations" )->excludes( er_opt );
  approx->add_option( "-o,--output", output, "Where to write the approximate PLA" );
  approx->add_flag( "--json", json, "Print the report as one JSON record" );
  add_common( *approx, flags );

  auto* verify = app.add_subcommand( "verify", "Measure the error rate between two PLAs" );
  std::string original_path;
  std::string approx_path;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  verify->add_option( "original", original_path, "Original PLA" )->required()->check( CLI::ExistingFile );
  verify->add_option( "approximate", approx_path, "Approximate PLA" )->required()->check( CLI::ExistingFile );
  verify->add_option( "--samples", samples, "Estimate from this many random inputs instead of all of them" );
  verify->add_option( "--seed", seed, "Seed for sampling" );
  verify->add_flag( "--json", json, "Print one JSON record" );
  add_common( *verify, flags );

  auto* bench = app.add_subcommand( "bench", "Run a benchmark suite over a directory of PLAs" );
  std::string dir = "bench/iwls93";
  std::string suite = "all";
  std::string report_path;
  bench->add_option( "--dir", dir, "Directory holding <circuit>.pla files" );
  bench->add_option( "--suite", suite, "table1, table2 or all" );
  bench->add_option( "--report", report_path, "Write one JSON record per run to this file" );
  bench->add_flag( "--json", json, "Print JSON records instead of the table" );
  add_common( *bench, flags );

  CLI11_PARSE( app, argc, argv );
  try
  {
    setup_logging( flags.log_level );
    if ( approx->parsed() )
    {
      return cmd_approximate( input, er, noe, output, json, flags );
    }
    if ( verify->parsed() )
    {
      return cmd_verify( original_path, approx_path, samples, seed, json, flags );
    }
    return cmd_bench( dir, suite, report_path, json, flags );
  }
  catch ( std::exception const& e )
  {
    spdlog::error( "{}", e.what() );
    return 2;
  }
}

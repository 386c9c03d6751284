/*!
  \file bench.hpp
  \brief Per-circuit approximation runs, their report records and the
  published reference suites.
*/

#pragma once

#include <sopals/engine.hpp>
#include <sopals/pla.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sopals
{

/*! \brief Either a fixed number of EICs or an error rate. */
struct threshold
{
  std::optional<std::uint64_t> noe;
  std::optional<double> er;

  std::uint64_t budget( int num_inputs ) const;
  std::string label() const;
};

struct suite_entry
{
  std::string circuit;
  threshold limit;
  std::optional<std::int64_t> published_original_literals;
  std::optional<std::int64_t> published_literals;
  std::optional<std::uint64_t> published_noe;
};

/*! \brief NoE 16 over the 18 circuits of the comparison table. */
std::vector<suite_entry> table1_suite();
/*! \brief ER 1%, 3% and 5% over the 6 larger circuits. */
std::vector<suite_entry> table2_suite();
std::vector<suite_entry> suite_by_name( std::string const& name );

struct run_options
{
  engine_options engine;
  literal_counting counting{ literal_counting::inputs_and_outputs };
  pla_parse_options parse;
};

struct circuit_report
{
  std::string circuit;
  std::string status{ "ok" };
  int inputs{};
  int outputs{};
  std::size_t cubes{};
  std::string limit;
  std::uint64_t noe{};
  std::int64_t original_literals{};
  std::int64_t minimized_literals{};
  std::int64_t approximate_literals{};
  double literal_ratio{};
  std::uint64_t eic_count{};
  double measured_er{};
  bool verified{};
  std::string counting;
  std::string minimizer;
  bool plain_minimization{};
  std::size_t coerced_outputs{};
  std::int64_t search_reduction{};
  double seconds{};
  std::optional<std::int64_t> published_original_literals;
  std::optional<std::int64_t> published_literals;
  std::optional<std::uint64_t> published_noe;
  std::vector<std::string> warnings;
};

/*! \brief Approximates one parsed document and verifies the result exhaustively. */
circuit_report run_document( std::string const& name, pla_document const& doc, threshold const& limit,
                             run_options const& options, cover* result = nullptr );

/*! \brief Reads, approximates and verifies one circuit; failures become a report with an error status. */
circuit_report run_circuit( std::filesystem::path const& path, suite_entry const& entry, run_options const& options );

/*! \brief Runs every entry whose file `<dir>/<circuit>.pla` exists. */
std::vector<circuit_report> run_suite( std::filesystem::path const& dir, std::vector<suite_entry> const& entries,
                                       run_options const& options, std::vector<std::string>* missing = nullptr );

nlohmann::json to_json( circuit_report const& r, bool with_timing = true );
std::string format_table( std::vector<circuit_report> const& rows );

/*! \brief Every run succeeded and stayed within its budget. */
bool all_verified( std::vector<circuit_report> const& rows );

} // namespace sopals

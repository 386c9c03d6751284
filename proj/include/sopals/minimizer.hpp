/*!
  \file minimizer.hpp
  \brief Error-free two-level minimization: an external Espresso run when one
  is configured, otherwise expansion followed by redundancy removal.
*/

#pragma once

#include <sopals/cover.hpp>
#include <sopals/error_model.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sopals
{

/*! \brief Environment variable naming the Espresso executable. */
inline constexpr char const* espresso_env = "SOPALS_ESPRESSO";

struct minimizer_options
{
  /*! \brief Takes precedence over the environment variable. */
  std::optional<std::filesystem::path> espresso;
  bool allow_external{ true };
};

struct minimize_result
{
  cover result;
  bool external{};
  std::vector<std::string> warnings;
};

/*! \brief A cover asserting every output at each of the given assignments. */
cover dc_cover( int num_inputs, int num_outputs, eic_set const& inputs, literal_counting counting );

/*! \brief Repeatedly drops a cube whose minterms are all covered elsewhere (or
    lie in dc), the one with more literals first. */
cover make_irredundant( cover const& f, cover const* dc = nullptr );

/*! \brief Expands each cube in turn, dropping literals in input order while the
    cube stays inside the ON-set of f plus dc, then removes redundant cubes. */
cover expand_pass( cover const& f, cover const* dc = nullptr );

/*! \brief The external executable to use, if any. */
std::optional<std::filesystem::path> resolve_espresso( minimizer_options const& options );

/*! \brief Runs the external tool on f and checks its answer. Throws on any failure. */
cover run_espresso( std::filesystem::path const& tool, cover const& f, cover const* dc = nullptr );

/*! \brief A cover equal to f outside dc with at most as many literals. */
minimize_result minimize( cover const& f, cover const* dc = nullptr, minimizer_options const& options = {} );

} // namespace sopals

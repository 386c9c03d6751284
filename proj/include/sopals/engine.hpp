/*!
  \file engine.hpp
  \brief The approximation search: a ledger of partial solutions per error
  level, expanded level by level with cube insertion and cube removal.
*/

#pragma once

#include <sopals/cover.hpp>
#include <sopals/cube_insertion.hpp>
#include <sopals/minimizer.hpp>
#include <sopals/solution.hpp>

#include <cstdint>
#include <vector>

namespace sopals
{

/*! \brief Slots of removed cubes and the inserted cubes, enough to undo a modification exactly. */
struct sop_change
{
  std::vector<std::pair<cube, cube_id>> removed;
  std::vector<cube> inserted;
};

/*! \brief Applies s to f. Throws when s does not fit f. */
sop_change modify_sop( cover& f, solution const& s );

/*! \brief Undoes modify_sop; f ends up identical to what it was before. */
void restore_sop( cover& f, sop_change const& change );

/*! \brief The k best solutions by ranks_before. */
std::vector<solution> top_solutions( std::vector<solution> const& level, std::size_t k, literal_counting counting );

/*! \brief Solutions per number of EICs, plus the best one seen. */
class solution_ledger
{
public:
  solution_ledger( std::uint64_t max_errors, literal_counting counting );

  std::uint64_t max_errors() const noexcept { return max_errors_; }

  /*! \brief Stores s at level |s.eics| unless that is beyond the budget or s is
      already there. Returns whether it was stored. */
  bool add( solution const& s );

  /*! \brief Makes s the best solution if it ranks before the current best. */
  void offer( solution const& s );

  std::vector<solution> const& level( std::uint64_t i ) const;
  solution const& best() const noexcept { return best_; }

private:
  std::uint64_t max_errors_;
  literal_counting counting_;
  std::vector<std::vector<solution>> levels_;
  solution best_;
};

struct engine_options
{
  insertion_options insertion;
  minimizer_options minimizer;
  /*! \brief Pass the EICs to the final minimization as don't-cares. */
  bool dc_eic{ false };
  /*! \brief Solutions expanded per level. */
  std::size_t beam{ 2 };
};

struct engine_stats
{
  std::uint64_t levels_visited{};
  std::uint64_t insertion_rounds{};
  std::uint64_t removal_rounds{};
  std::uint64_t stored_solutions{};
};

struct approximation
{
  cover result;
  solution best;
  std::uint64_t max_errors{};
  /*! \brief Literals of the original after error-free minimization. */
  std::int64_t minimized_literals{};
  /*! \brief The minimized original was at least as small as the approximation. */
  bool plain_minimization{};
  bool external_minimizer{};
  std::vector<std::string> warnings;
  engine_stats stats;
};

/*! \brief Best solution found by the search, before minimization. */
solution search( cover const& f, std::uint64_t max_errors, engine_options const& options = {},
                 engine_stats* stats = nullptr );

/*! \brief Approximates f with at most max_errors erroneous input combinations. */
approximation approximate( cover const& f, std::uint64_t max_errors, engine_options const& options = {} );

/*! \brief Same, with the budget floor(er * 2^n). */
approximation approximate_er( cover const& f, double er, engine_options const& options = {} );

} // namespace sopals

/*!
  \file cube_insertion.hpp
  \brief Cube insertion: SICC-cube trees (SCTs) built from expanded cubes.

  An SCT pairs a root (one or two input combinations that become erroneous
  once the leaves are inserted) with leaves, each an expansion of a cube of
  the cover. Inserting a leaf makes its origin cube redundant, so every leaf
  on its own already saves at least one literal.
*/

#pragma once

#include <sopals/cover.hpp>
#include <sopals/error_model.hpp>
#include <sopals/execution.hpp>
#include <sopals/solution.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sopals
{

struct sct_leaf
{
  cube leaf;
  cube origin;

  friend bool operator==( sct_leaf const&, sct_leaf const& ) = default;
};

struct sct
{
  eic_set root;
  std::vector<sct_leaf> leaves;
  std::int64_t estimated_reduction{};
};

/*! \brief Leaves chosen for insertion and the cubes they make redundant. */
struct reduction_estimate
{
  std::int64_t reduction{};
  std::vector<cube> inserted;
  std::vector<cube> removed;
};

struct insertion_options
{
  /*! \brief The first SCT of a combined pair must rank within this fraction. */
  double top_fraction{ 0.25 };
  /*! \brief The second SCT of a combined pair must rank within this fraction. */
  double partner_fraction{ 0.80 };
  /*! \brief Leaf subsets are enumerated exhaustively up to this many leaves. */
  std::size_t exhaustive_leaf_limit{ 8 };
  execution policy{ execution::parallel };
};

/*! \brief SCTs for every expansion of every cube of f whose new EICs
    (ignoring `prior`) number between 1 and max_eics. Expansions with the same
    EICs share one SCT. Ordered by root size, then root. */
std::vector<sct> generate_scts( cover const& f, int max_eics, eic_set const& prior,
                                execution policy = execution::parallel );

/*! \brief Adds the leaves of each one-EIC SCT to every two-EIC SCT whose root contains it. */
void augment( std::vector<sct>& scts );

/*! \brief Picks the leaf subset with the largest literal reduction. A cube of f is
    removed when the chosen leaves and the remaining cubes still cover it. */
reduction_estimate estimate_reduction( cover const& f, sct const& tree, std::size_t exhaustive_leaf_limit = 8 );

/*! \brief Simulates inserting `leaves` into f and greedily removing cubes they
    make redundant (larger cubes first). Exact literal delta of applying the result. */
reduction_estimate simulate_insertion( cover const& f, std::vector<cube> const& leaves );

struct insertion_candidates
{
  std::optional<solution> one_error;
  std::optional<solution> two_error;
};

/*! \brief Estimates every SCT (storing the estimate in it), combines pairs of
    one-EIC SCTs and returns the best one- and two-EIC edits of f. The EICs of
    a returned edit are those of the leaves it inserts, ignoring `prior`. */
insertion_candidates combine_and_estimate( cover const& f, std::vector<sct>& scts, eic_set const& prior = {},
                                           insertion_options const& options = {} );

/*! \brief One round of cube insertion on f, which has `base` applied. The
    returned solutions are merged with `base`. */
insertion_candidates cube_insertion( cover const& f, int max_eics, solution const& base,
                                     insertion_options const& options = {} );

} // namespace sopals

/*!
  \file cube_removal.hpp
  \brief Greedy cube removal under a budget of erroneous input combinations.
*/

#pragma once

#include <sopals/cover.hpp>
#include <sopals/error_model.hpp>
#include <sopals/solution.hpp>

#include <cstdint>
#include <vector>

namespace sopals
{

/*! \brief Inputs of the minterms only `id` covers, minus those already erroneous. */
eic_set get_cube_eic( cube_id id, cover const& f, eic_set const& new_eic );
eic_set get_cube_eic( cube_id id, cover const& f, assignment_set const& new_eic );

/*! \brief literals / max(0.01, eic_count) */
double removal_gain( int literals, std::size_t eic_count ) noexcept;

/*! \brief new_eic plus best_eic, minus every member whose outputs in f_after
    agree with the original function again. */
eic_set update_eics( eic_set const& new_eic, eic_set const& best_eic, cover const& f_after, cover const& original );

struct removal_step
{
  cube removed;
  int literals{};
  std::size_t eics{};
  double gain{};
  std::uint64_t budget_left{};
};

/*! \brief Removes cubes of f (which has `base` applied) in order of gain
    while their EICs fit the remaining budget. Cubes without EICs are removed
    even when the budget is exhausted. f is restored before returning.
    `original` is the unmodified cover, used to detect corrected EICs. */
solution cube_removal( cover& f, std::uint64_t budget, solution const& base, cover const& original,
                       std::vector<removal_step>* steps = nullptr );

} // namespace sopals

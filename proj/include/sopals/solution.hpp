/*!
  \file solution.hpp
  \brief Partial approximations expressed as edits of the original cover.
*/

#pragma once

#include <sopals/cover.hpp>
#include <sopals/error_model.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace sopals
{

/*! \brief Cubes to insert into and remove from the original cover, the
    resulting literal reduction, and the EICs the edits introduce.

    Both cube lists are kept in pattern order, so two solutions with the same
    edits compare equal. */
struct solution
{
  std::vector<cube> inserted;
  std::vector<cube> removed;
  std::int64_t reduction{};
  eic_set eics;

  bool empty() const noexcept { return inserted.empty() && removed.empty(); }
  bool same_edits( solution const& other ) const noexcept
  {
    return inserted == other.inserted && removed == other.removed;
  }

  friend bool operator==( solution const&, solution const& ) = default;
};

std::int64_t literal_sum( std::vector<cube> const& cubes, literal_counting counting ) noexcept;

/*! \brief Sorts both lists and recomputes the reduction. */
void normalize( solution& s, literal_counting counting );

/*! \brief Merges `part` (edits relative to the cover with `base` applied)
    into `base`. An insertion undone by a later removal cancels out, and so
    does a removal undone by a later insertion. Throws when the EIC sets overlap. */
solution update_solution( solution const& part, solution const& base, literal_counting counting );

/*! \brief Ranking used everywhere a best solution is picked: larger reduction,
    then fewer EICs, then fewer inserted literals, then pattern order of the
    inserted and removed cubes. */
bool ranks_before( solution const& a, solution const& b, literal_counting counting );

std::string describe( solution const& s, int num_inputs, int num_outputs );

} // namespace sopals

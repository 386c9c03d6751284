/*!
  \file error_model.hpp
  \brief Erroneous input combinations (EICs), error-rate thresholds and the
  error-rate oracles.

  An EIC is an input assignment at which the approximate cover disagrees with
  the original on at least one output. Two wrong outputs at the same
  assignment count once.
*/

#pragma once

#include <sopals/cover.hpp>
#include <sopals/cube.hpp>
#include <sopals/execution.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace sopals
{

/*! \brief Sorted, duplicate-free input assignments. */
using eic_set = std::vector<std::uint64_t>;

bool eic_contains( eic_set const& s, std::uint64_t assignment ) noexcept;
eic_set eic_union( eic_set const& a, eic_set const& b );
eic_set eic_difference( eic_set const& a, eic_set const& b );
bool eic_disjoint( eic_set const& a, eic_set const& b ) noexcept;

/*! \brief Dense membership set over the 2^n assignments of a cover. */
class assignment_set
{
public:
  explicit assignment_set( int num_inputs );
  assignment_set( int num_inputs, eic_set const& members );

  bool contains( std::uint64_t v ) const noexcept { return ( words_[v >> 6] >> ( v & 63u ) ) & 1u; }
  void insert( std::uint64_t v ) noexcept;
  void erase( std::uint64_t v ) noexcept;
  std::size_t size() const noexcept { return size_; }
  eic_set members() const;

private:
  std::vector<std::uint64_t> words_;
  std::size_t size_{};
};

/*! \brief floor(er * 2^n); throws for er outside [0, 1]. */
std::uint64_t noe_from_er( double er, int num_inputs );

struct error_measure
{
  std::uint64_t eic_count{};
  double er{};
  /*! \brief Assignments at which each output differs. */
  std::vector<std::uint64_t> output_flips;

  friend bool operator==( error_measure const&, error_measure const& ) = default;
};

inline constexpr int max_exhaustive_inputs = 24;

/*! \brief Compares the two covers at every input assignment. */
error_measure exhaustive_error_rate( std::span<cube const> original, std::span<cube const> approx, int num_inputs,
                                     int num_outputs, execution policy = execution::parallel );
error_measure exhaustive_error_rate( cover const& original, cover const& approx,
                                     execution policy = execution::parallel );

/*! \brief Serial reference: evaluates every cube at every assignment. */
error_measure exhaustive_error_rate_reference( std::span<cube const> original, std::span<cube const> approx,
                                               int num_inputs, int num_outputs );

/*! \brief Assignments at which the two cube lists disagree. */
eic_set erroneous_inputs( std::span<cube const> original, std::span<cube const> approx, int num_inputs );

struct sampled_error
{
  double er{};
  double lower{}; // Wilson 95% interval
  double upper{};
  std::uint64_t samples{};
  std::uint64_t errors{};
  /*! \brief The sample budget covered the input space, so every input was evaluated once. */
  bool exhaustive{};
};

sampled_error sampled_error_rate( std::span<cube const> original, std::span<cube const> approx, int num_inputs,
                                  std::uint64_t samples, std::uint64_t seed );

/*! \brief Assignments v with some (v, o) covered by c, absent from f's ON-set and v not in `existing`. */
eic_set cube_insertion_eics( cube const& c, cover const& f, eic_set const& existing );

} // namespace sopals

#pragma once

namespace sopals
{

/*! \brief Selects the serial reference kernels or their OpenMP counterparts.
    Both produce identical results. */
enum class execution
{
  serial,
  parallel
};

int max_threads() noexcept;

} // namespace sopals

/*!
  \file cover.hpp
  \brief A sum-of-products cover with incrementally maintained coverage maps.

  The covering map (minterm -> cubes covering it) is stored densely as one
  entry per (assignment, output) pair: the number of covering cubes and the
  wrapping sum of their ids. When the count is one the sum is the id of the
  only covering cube, which is all the unique map needs. Each cube also keeps
  the size of its unique set so that redundancy checks are O(1).
*/

#pragma once

#include <sopals/cube.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sopals
{

using cube_id = std::uint32_t;

/*! \brief Covers hold dense maps, so the key space 2^n * m is bounded. */
inline constexpr int max_cover_inputs = 24;
inline constexpr std::uint64_t max_cover_keys = std::uint64_t{ 1 } << 26;

class cover
{
public:
  cover( int num_inputs, int num_outputs, literal_counting counting = literal_counting::inputs_and_outputs );

  /*! \brief Builds both maps from scratch. Duplicate cubes are kept once and
      reported through `warnings` when given. */
  cover( int num_inputs, int num_outputs, std::span<cube const> cubes,
         literal_counting counting = literal_counting::inputs_and_outputs,
         std::vector<std::string>* warnings = nullptr );

  int num_inputs() const noexcept { return num_inputs_; }
  int num_outputs() const noexcept { return num_outputs_; }
  literal_counting counting() const noexcept { return counting_; }

  cube_id insert( cube const& c );
  /*! \brief Re-inserts c at a slot it previously occupied (dead, or past the end). */
  cube_id insert_at( cube const& c, cube_id slot );
  void remove( cube const& c );
  void remove( cube_id id );

  bool contains( cube const& c ) const;
  std::optional<cube_id> find( cube const& c ) const;
  cube const& operator[]( cube_id id ) const { return slots_[id]; }
  bool alive( cube_id id ) const noexcept { return id < alive_.size() && alive_[id]; }

  std::size_t size() const noexcept { return live_; }
  bool empty() const noexcept { return live_ == 0; }
  /*! \brief Upper bound on cube ids (dead slots included). */
  cube_id slot_count() const noexcept { return static_cast<cube_id>( slots_.size() ); }
  std::vector<cube_id> ids() const;
  std::vector<cube> cubes() const;

  std::uint32_t cover_count( std::uint64_t assignment, std::uint32_t output ) const noexcept
  {
    return table_[key( assignment, output )].count;
  }
  std::uint32_t cover_count( minterm const& t ) const noexcept { return cover_count( t.input, t.output ); }
  bool is_on( minterm const& t ) const noexcept { return cover_count( t ) != 0; }
  std::optional<cube_id> unique_owner( minterm const& t ) const noexcept;
  std::vector<cube_id> covering_cubes( minterm const& t ) const;

  std::vector<minterm> unique_minterms( cube_id id ) const;
  std::uint64_t unique_count( cube_id id ) const noexcept { return unique_[id]; }

  /*! \brief Outputs asserted by the cover at an input assignment. */
  std::uint64_t output_vector( std::uint64_t assignment ) const noexcept;

  std::vector<minterm> on_set() const;
  std::uint64_t on_set_size() const noexcept { return on_set_size_; }

  int literals( cube const& c ) const noexcept { return literal_count( c, counting_ ); }
  std::int64_t total_literals() const noexcept { return total_literals_; }

  /*! \brief Same live cubes in the same order and the same coverage maps. */
  friend bool operator==( cover const& a, cover const& b );
  /*! \brief Equal down to slot ids of live cubes and internal sums. */
  bool identical( cover const& other ) const;

private:
  struct entry
  {
    std::uint32_t count{};
    std::uint32_t owner_sum{};
    friend bool operator==( entry const&, entry const& ) = default;
  };

  std::size_t key( std::uint64_t assignment, std::uint32_t output ) const noexcept
  {
    return static_cast<std::size_t>( assignment ) * static_cast<std::size_t>( num_outputs_ ) + output;
  }
  void check_dimensions( cube const& c ) const;
  void attach( cube_id id );
  void trim_dead_tail();

  int num_inputs_;
  int num_outputs_;
  literal_counting counting_;
  std::vector<cube> slots_;
  std::vector<char> alive_;
  std::vector<std::uint64_t> unique_;
  std::unordered_map<cube, cube_id, cube_hash> index_;
  std::vector<entry> table_;
  std::size_t live_{};
  std::uint64_t on_set_size_{};
  std::int64_t total_literals_{};
};

/*! \brief Covered-only-once minterms per live cube, keyed by pattern. Rebuild oracle for tests. */
std::vector<std::pair<cube, std::vector<minterm>>> unique_map( cover const& f );

} // namespace sopals

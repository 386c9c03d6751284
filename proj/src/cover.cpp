#include <sopals/cover.hpp>

#include <fmt/format.h>

#include <algorithm>

namespace sopals
{

cover::cover( int num_inputs, int num_outputs, literal_counting counting )
    : num_inputs_( num_inputs ), num_outputs_( num_outputs ), counting_( counting )
{
  if ( num_inputs < 0 || num_inputs > max_cover_inputs )
  {
    throw error( fmt::format( "covers support at most {} inputs, got {}", max_cover_inputs, num_inputs ) );
  }
  if ( num_outputs < 1 || num_outputs > max_outputs )
  {
    throw error( fmt::format( "covers need between 1 and {} outputs, got {}", max_outputs, num_outputs ) );
  }
  auto const keys = ( std::uint64_t{ 1 } << num_inputs ) * static_cast<std::uint64_t>( num_outputs );
  if ( keys > max_cover_keys )
  {
    throw error( fmt::format( "2^{} x {} minterm slots exceed the cover limit", num_inputs, num_outputs ) );
  }
  table_.resize( static_cast<std::size_t>( keys ) );
}

cover::cover( int num_inputs, int num_outputs, std::span<cube const> cubes, literal_counting counting,
              std::vector<std::string>* warnings )
    : cover( num_inputs, num_outputs, counting )
{
  for ( auto const& c : cubes )
  {
    check_dimensions( c );
    if ( contains( c ) )
    {
      if ( warnings )
      {
        warnings->push_back( fmt::format( "duplicate cube {} dropped", to_string( c, num_inputs, num_outputs ) ) );
      }
      continue;
    }
    insert( c );
  }
}

void cover::check_dimensions( cube const& c ) const
{
  auto const mask = input_mask( num_inputs_ );
  std::uint64_t const out_mask = num_outputs_ >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << num_outputs_ ) - 1u;
  if ( ( c.care & ~mask ) != 0 || ( c.value & ~c.care ) != 0 || ( c.outputs & ~out_mask ) != 0 )
  {
    throw error( fmt::format( "cube does not fit a {}-input {}-output cover", num_inputs_, num_outputs_ ) );
  }
  if ( c.outputs == 0 )
  {
    throw error( "a cube in a cover must assert at least one output" );
  }
}

cube_id cover::insert( cube const& c )
{
  check_dimensions( c );
  cube_id id;
  if ( auto it = index_.find( c ); it != index_.end() )
  {
    id = it->second;
    if ( alive_[id] )
    {
      throw error( fmt::format( "cube {} is already in the cover", to_string( c, num_inputs_, num_outputs_ ) ) );
    }
  }
  else
  {
    id = static_cast<cube_id>( slots_.size() );
    slots_.push_back( c );
    alive_.push_back( 0 );
    unique_.push_back( 0 );
    index_.emplace( c, id );
  }
  attach( id );
  return id;
}

cube_id cover::insert_at( cube const& c, cube_id slot )
{
  check_dimensions( c );
  if ( auto it = index_.find( c ); it != index_.end() )
  {
    if ( alive_[it->second] )
    {
      throw error( fmt::format( "cube {} is already in the cover", to_string( c, num_inputs_, num_outputs_ ) ) );
    }
    if ( it->second != slot )
    {
      slots_[it->second] = cube{};
      index_.erase( it );
    }
  }
  if ( slot < slots_.size() )
  {
    if ( alive_[slot] )
    {
      throw error( fmt::format( "slot {} is occupied", slot ) );
    }
    if ( slots_[slot] != c )
    {
      if ( auto old = index_.find( slots_[slot] ); old != index_.end() && old->second == slot )
      {
        index_.erase( old );
      }
      slots_[slot] = c;
    }
  }
  else
  {
    // dead placeholders keep the slot ids of the cubes after them stable
    slots_.resize( slot + 1, cube{} );
    alive_.resize( slot + 1, 0 );
    unique_.resize( slot + 1, 0 );
    slots_[slot] = c;
  }
  index_.insert_or_assign( c, slot );
  attach( slot );
  return slot;
}

void cover::attach( cube_id id )
{
  auto const& c = slots_[id];
  std::uint64_t uniq = 0;
  for_each_assignment( c, num_inputs_, [&]( std::uint64_t v ) {
    for_each_output( c.outputs, [&]( std::uint32_t o ) {
      auto& e = table_[key( v, o )];
      if ( e.count == 0 )
      {
        ++uniq;
        ++on_set_size_;
      }
      else if ( e.count == 1 )
      {
        --unique_[e.owner_sum];
      }
      ++e.count;
      e.owner_sum += id;
    } );
  } );
  unique_[id] = uniq;
  alive_[id] = 1;
  ++live_;
  total_literals_ += literals( c );
}

void cover::remove( cube const& c )
{
  auto const id = find( c );
  if ( !id )
  {
    throw error( fmt::format( "cube {} is not in the cover", to_string( c, num_inputs_, num_outputs_ ) ) );
  }
  remove( *id );
}

void cover::remove( cube_id id )
{
  if ( !alive( id ) )
  {
    throw error( fmt::format( "cube id {} is not in the cover", id ) );
  }
  auto const& c = slots_[id];
  for_each_assignment( c, num_inputs_, [&]( std::uint64_t v ) {
    for_each_output( c.outputs, [&]( std::uint32_t o ) {
      auto& e = table_[key( v, o )];
      if ( e.count == 1 )
      {
        --on_set_size_;
      }
      else if ( e.count == 2 )
      {
        ++unique_[e.owner_sum - id];
      }
      --e.count;
      e.owner_sum -= id;
    } );
  } );
  unique_[id] = 0;
  alive_[id] = 0;
  --live_;
  total_literals_ -= literals( c );
  trim_dead_tail();
}

void cover::trim_dead_tail()
{
  while ( !slots_.empty() && !alive_.back() )
  {
    if ( auto it = index_.find( slots_.back() ); it != index_.end() && it->second + 1 == slots_.size() )
    {
      index_.erase( it );
    }
    slots_.pop_back();
    alive_.pop_back();
    unique_.pop_back();
  }
}

bool cover::contains( cube const& c ) const
{
  return find( c ).has_value();
}

std::optional<cube_id> cover::find( cube const& c ) const
{
  if ( auto it = index_.find( c ); it != index_.end() && alive_[it->second] )
  {
    return it->second;
  }
  return std::nullopt;
}

std::vector<cube_id> cover::ids() const
{
  std::vector<cube_id> result;
  result.reserve( live_ );
  for ( cube_id id = 0; id < slots_.size(); ++id )
  {
    if ( alive_[id] )
    {
      result.push_back( id );
    }
  }
  return result;
}

std::vector<cube> cover::cubes() const
{
  std::vector<cube> result;
  result.reserve( live_ );
  for ( cube_id id = 0; id < slots_.size(); ++id )
  {
    if ( alive_[id] )
    {
      result.push_back( slots_[id] );
    }
  }
  return result;
}

std::optional<cube_id> cover::unique_owner( minterm const& t ) const noexcept
{
  auto const& e = table_[key( t.input, t.output )];
  if ( e.count == 1 )
  {
    return e.owner_sum;
  }
  return std::nullopt;
}

std::vector<cube_id> cover::covering_cubes( minterm const& t ) const
{
  std::vector<cube_id> result;
  for ( cube_id id = 0; id < slots_.size(); ++id )
  {
    if ( alive_[id] && slots_[id].covers( t ) )
    {
      result.push_back( id );
    }
  }
  return result;
}

std::vector<minterm> cover::unique_minterms( cube_id id ) const
{
  std::vector<minterm> result;
  if ( !alive( id ) )
  {
    return result;
  }
  for_each_minterm( slots_[id], num_inputs_, [&]( minterm const& t ) {
    if ( table_[key( t.input, t.output )].count == 1 )
    {
      result.push_back( t );
    }
  } );
  return result;
}

std::uint64_t cover::output_vector( std::uint64_t assignment ) const noexcept
{
  std::uint64_t out = 0;
  auto const base = key( assignment, 0 );
  for ( int o = 0; o < num_outputs_; ++o )
  {
    if ( table_[base + static_cast<std::size_t>( o )].count != 0 )
    {
      out |= std::uint64_t{ 1 } << o;
    }
  }
  return out;
}

std::vector<minterm> cover::on_set() const
{
  std::vector<minterm> result;
  result.reserve( on_set_size_ );
  auto const m = static_cast<std::size_t>( num_outputs_ );
  for ( std::size_t k = 0; k < table_.size(); ++k )
  {
    if ( table_[k].count != 0 )
    {
      result.push_back( minterm{ k / m, static_cast<std::uint32_t>( k % m ) } );
    }
  }
  return result;
}

bool operator==( cover const& a, cover const& b )
{
  if ( a.num_inputs_ != b.num_inputs_ || a.num_outputs_ != b.num_outputs_ || a.live_ != b.live_ ||
       a.total_literals_ != b.total_literals_ || a.cubes() != b.cubes() )
  {
    return false;
  }
  for ( std::size_t k = 0; k < a.table_.size(); ++k )
  {
    if ( a.table_[k].count != b.table_[k].count )
    {
      return false;
    }
  }
  auto const ia = a.ids();
  auto const ib = b.ids();
  for ( std::size_t k = 0; k < ia.size(); ++k )
  {
    if ( a.unique_[ia[k]] != b.unique_[ib[k]] )
    {
      return false;
    }
  }
  return true;
}

bool cover::identical( cover const& other ) const
{
  if ( num_inputs_ != other.num_inputs_ || num_outputs_ != other.num_outputs_ || counting_ != other.counting_ ||
       slots_.size() != other.slots_.size() || live_ != other.live_ || on_set_size_ != other.on_set_size_ ||
       total_literals_ != other.total_literals_ || table_ != other.table_ )
  {
    return false;
  }
  for ( cube_id id = 0; id < slots_.size(); ++id )
  {
    if ( alive_[id] != other.alive_[id] )
    {
      return false;
    }
    if ( alive_[id] && ( slots_[id] != other.slots_[id] || unique_[id] != other.unique_[id] ) )
    {
      return false;
    }
  }
  return true;
}

std::vector<std::pair<cube, std::vector<minterm>>> unique_map( cover const& f )
{
  std::vector<std::pair<cube, std::vector<minterm>>> result;
  for ( auto id : f.ids() )
  {
    result.emplace_back( f[id], f.unique_minterms( id ) );
  }
  return result;
}

} // namespace sopals

/*!
  \file pla.hpp
  \brief Berkeley PLA reader and writer (ON-set view).
*/

#pragma once

#include <sopals/cube.hpp>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sopals
{

enum class pla_type
{
  fd,
  fr,
  f
};

struct pla_document
{
  int num_inputs{};
  int num_outputs{};
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;
  pla_type type{ pla_type::fd };
  std::vector<cube> cubes;
  std::optional<std::size_t> declared_product_count;
  /*! \brief Output don't-cares coerced to 0 while parsing. */
  std::size_t coerced_outputs{};
  std::vector<std::string> warnings;
};

struct pla_parse_options
{
  /*! \brief Reject output don't-cares and .p mismatches instead of warning. */
  bool strict{ false };
};

class pla_parse_error : public error
{
public:
  pla_parse_error( std::size_t line, std::string const& message );
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

pla_document parse_pla( std::istream& in, pla_parse_options const& options = {} );
pla_document parse_pla( std::string_view text, pla_parse_options const& options = {} );
pla_document read_pla( std::filesystem::path const& path, pla_parse_options const& options = {} );

std::string write_pla( pla_document const& doc );
void write_pla( std::filesystem::path const& path, pla_document const& doc );

pla_document make_document( int num_inputs, int num_outputs, std::vector<cube> cubes );

} // namespace sopals

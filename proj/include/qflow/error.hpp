#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qflow {

enum class Errc {
  degree_out_of_range,
  argument_out_of_domain,
  invalid_argument,
  out_of_table_range,
  stencil_hits_node,
  stencil_crosses_cut,
  origin_evaluation,
  singular_contour,
  singular_point,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

  // True for the outcomes that mean "the field is singular here" rather
  // than "the request was malformed".
  bool is_singularity() const noexcept {
    return code_ == Errc::stencil_hits_node ||
           code_ == Errc::stencil_crosses_cut ||
           code_ == Errc::origin_evaluation ||
           code_ == Errc::singular_contour ||
           code_ == Errc::singular_point;
  }

 private:
  Errc code_;
};

}  // namespace qflow

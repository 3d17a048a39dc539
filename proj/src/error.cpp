#include "qflow/error.hpp"

namespace qflow {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::degree_out_of_range: return "degree-out-of-range";
    case Errc::argument_out_of_domain: return "argument-out-of-domain";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::out_of_table_range: return "out-of-table-range";
    case Errc::stencil_hits_node: return "stencil-hits-node";
    case Errc::stencil_crosses_cut: return "stencil-crosses-cut";
    case Errc::origin_evaluation: return "origin-evaluation";
    case Errc::singular_contour: return "singular-point-on-contour";
    case Errc::singular_point: return "singular-point";
  }
  return "unknown";
}

}  // namespace qflow

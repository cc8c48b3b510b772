#pragma once

#include "sugra/eom11.hpp"
#include "sugra/eomiia.hpp"
#include "sugra/eomiib.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace sugra {

/// Input-file problem; the message carries the offending field.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Compiled scalar expression over named chart coordinates: polynomials with
/// rational-literal coefficients, division, integer powers and exp(...)
/// composition. Scalars defined in the same file may be referenced by name.
class Expr {
 public:
  using Env = std::map<std::string, std::shared_ptr<const Expr>>;
  static Expr parse(const std::string& src, const std::vector<std::string>& coords,
                    const Env& scalars = {});
  double eval(const Point& p) const;

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
};

struct LoadedBackground {
  std::string theory;
  int dim = 0;
  std::vector<Point> probe_points;
  ResidualOptions tolerances;
  bool anomaly = false;
  bool flip_sign = false;  // alternate sign convention requested in the file
  double fiber_length = 1.0;
  std::optional<Background11> m11;
  std::optional<BackgroundIIA> iia;
  std::optional<BackgroundIIB> iib;
};

/// Reads and validates a background file; throws SpecError on any schema or
/// consistency problem.
LoadedBackground load_background(const std::string& path);
LoadedBackground parse_background(const std::string& text, const std::string& origin);

}  // namespace sugra

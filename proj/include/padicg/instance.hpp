#pragma once

#include <optional>
#include <stdexcept>

#include "padicg/field.hpp"

namespace padicg {

class GammaCache;

/// Knobs shared by every engine that consumes Gamma_p tables.
struct EngineOptions {
  unsigned workers = 1;
  GammaCache* cache = nullptr;
  /// Overrides the grade slack of the G-function evaluator (default n*r).
  std::optional<int> slack;
};

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// X_lambda^d : x_1^d + ... + x_d^d = d lambda x_1 ... x_d over F_q, with d an
/// odd prime, p != d and q != 1 (mod d).
struct DworkInstance {
  unsigned d = 3;
  FieldPtr field;
  FqElem lambda{};

  /// Validates the hypotheses; throws InvalidInstance naming the first one
  /// violated.
  static DworkInstance make(unsigned d, FieldPtr field, FqElem lambda);
};

}  // namespace padicg

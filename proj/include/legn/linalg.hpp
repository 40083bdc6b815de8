#pragma once

#include <vector>

#include "legn/rational.hpp"

namespace legn {

using RatMatrix = std::vector<std::vector<Rat>>;

/// In-place reduced row echelon form; returns the pivot column of each nonzero row.
std::vector<int> rref(RatMatrix& m, int cols);

/// Basis of {v : m v = 0}, one vector per free column (1 there, 0 on other free columns).
std::vector<std::vector<Rat>> nullspace(RatMatrix m, int cols);

/// Scales v to a primitive integer vector whose first nonzero entry is positive.
std::vector<Rat> primitive_integer(std::vector<Rat> v);

} // namespace legn

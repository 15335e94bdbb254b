// Copyright 2026 The corrquery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <stdexcept>
#include <vector>

#include "corrquery/errors.h"
#include "corrquery/solvers.h"

namespace corrquery {
namespace {

// Dense phase-one simplex tableau for
//   A x + s = 0,  sum(x) + a = 1,  x, s, a >= 0,  minimize a,
// where row k = 2i + b of A holds u_i(v^{i->b}) - u_i(v). Bland's rule
// guarantees termination on the heavily degenerate zero right-hand sides.
class PhaseOneTableau {
 public:
  PhaseOneTableau(const GameInstance& game) : n_(game.num_players()) {
    profiles_ = std::size_t{1} << n_;
    constraints_ = static_cast<std::size_t>(2 * n_);
    columns_ = profiles_ + constraints_ + 1;
    rows_.assign(constraints_ + 1, std::vector<Rational>(columns_ + 1, Rational(0)));

    std::vector<std::vector<Rational>> utilities(profiles_);
    for (std::uint32_t b = 0; b < profiles_; ++b) utilities[b] = game.Utilities(Vertex(n_, b));
    for (int i = 0; i < n_; ++i) {
      for (std::uint32_t b = 0; b < profiles_; ++b) {
        const int own = static_cast<int>((b >> i) & 1U);
        const std::uint32_t flipped = b ^ (1U << i);
        // A profile with v_i = own only enters the constraint for deviating to 1 - own.
        rows_[static_cast<std::size_t>(2 * i + (1 - own))][b] =
            utilities[flipped][static_cast<std::size_t>(i)] - utilities[b][static_cast<std::size_t>(i)];
      }
    }
    for (std::size_t k = 0; k < constraints_; ++k) rows_[k][profiles_ + k] = 1;
    auto& simplex_row = rows_[constraints_];
    for (std::size_t b = 0; b < profiles_; ++b) simplex_row[b] = 1;
    simplex_row[columns_ - 1] = 1;
    simplex_row[columns_] = 1;

    basis_.resize(constraints_ + 1);
    for (std::size_t k = 0; k < constraints_; ++k) basis_[k] = profiles_ + k;
    basis_[constraints_] = columns_ - 1;

    // Reduced costs for minimizing the artificial variable.
    reduced_.assign(columns_ + 1, Rational(0));
    for (std::size_t b = 0; b < profiles_; ++b) reduced_[b] = -1;
    reduced_[columns_] = -1;  // minus the objective value
  }

  void Solve() {
    while (true) {
      std::size_t entering = columns_;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (reduced_[j] < 0) {
          entering = j;
          break;
        }
      }
      if (entering == columns_) return;

      std::size_t leaving = rows_.size();
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& coeff = rows_[r][entering];
        if (coeff <= 0) continue;
        Rational ratio = rows_[r][columns_] / coeff;
        if (leaving == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows_.size()) {
        throw std::logic_error("phase-one simplex is unbounded");
      }
      Pivot(leaving, entering);
    }
  }

  Rational objective() const { return -reduced_[columns_]; }

  std::map<std::uint32_t, Rational> Solution() const {
    std::map<std::uint32_t, Rational> out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < profiles_ && rows_[r][columns_] != 0) {
        out.emplace(static_cast<std::uint32_t>(basis_[r]), rows_[r][columns_]);
      }
    }
    return out;
  }

 private:
  void Pivot(std::size_t row, std::size_t column) {
    std::vector<Rational>& pivot_row = rows_[row];
    const Rational pivot = pivot_row[column];
    for (Rational& entry : pivot_row) {
      if (entry != 0) entry /= pivot;
    }
    auto eliminate = [&](std::vector<Rational>& target) {
      const Rational factor = target[column];
      if (factor == 0) return;
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (pivot_row[j] != 0) target[j] -= factor * pivot_row[j];
      }
    };
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r != row) eliminate(rows_[r]);
    }
    eliminate(reduced_);
    basis_[row] = column;
  }

  int n_;
  std::size_t profiles_ = 0;
  std::size_t constraints_ = 0;
  std::size_t columns_ = 0;
  // Each row: coefficients for [x_0..x_{P-1}, s_0..s_{2n-1}, a] then rhs.
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> reduced_;
  std::vector<std::size_t> basis_;
};

}  // namespace

SparseDistribution ExactCorrelatedEquilibrium(const GameInstance& game) {
  const int n = game.num_players();
  if (n > kMaxExactDimension) {
    throw CapacityError("exact correlated equilibrium limited to n <= " +
                        std::to_string(kMaxExactDimension));
  }
  PhaseOneTableau tableau(game);
  tableau.Solve();
  if (tableau.objective() != 0) {
    throw std::logic_error("no correlated equilibrium found; the simplex is defective");
  }
  SparseDistribution x(n, tableau.Solution());
  if (!VerifyCorrelatedEquilibrium(x, game, Rational(0)).pass) {
    throw std::logic_error("simplex output is not a correlated equilibrium");
  }
  return x;
}

}  // namespace corrquery

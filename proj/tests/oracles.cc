// Copyright 2026 The pguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "Eigen/LU"

namespace pguess::testing {

Rows ToRows(const Eigen::MatrixXd& m) {
  Rows rows(m.rows(), std::vector<double>(m.cols()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  }
  return rows;
}

double NaiveCondGuess(const Rows& joint) {
  double total = 0.0;
  for (size_t y = 0; y < joint[0].size(); ++y) {
    double best = 0.0;
    for (const auto& row : joint) best = std::max(best, row[y]);
    total += best;
  }
  return total;
}

double NaiveGuess(const Rows& joint) {
  double best = 0.0;
  for (const auto& row : joint) {
    double s = 0.0;
    for (double v : row) s += v;
    best = std::max(best, s);
  }
  return best;
}

Rows NaiveCompose(const Rows& joint, const Rows& filter) {
  Rows out(joint.size(), std::vector<double>(filter[0].size(), 0.0));
  for (size_t x = 0; x < joint.size(); ++x) {
    for (size_t y = 0; y < filter.size(); ++y) {
      for (size_t z = 0; z < filter[0].size(); ++z) {
        out[x][z] += joint[x][y] * filter[y][z];
      }
    }
  }
  return out;
}

double NaiveUtility(const Rows& joint, const Rows& filter) {
  Rows yz(filter.size(), std::vector<double>(filter[0].size(), 0.0));
  for (size_t y = 0; y < filter.size(); ++y) {
    double py = 0.0;
    for (const auto& row : joint) py += row[y];
    for (size_t z = 0; z < filter[0].size(); ++z) yz[y][z] = py * filter[y][z];
  }
  return NaiveCondGuess(yz);
}

double NaivePrivacy(const Rows& joint, const Rows& filter) {
  return NaiveCondGuess(NaiveCompose(joint, filter));
}

namespace {

Eigen::MatrixXd RandomRowsSumming(std::mt19937_64& rng, int rows, int cols,
                                  double zero_fraction, bool per_row) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = unit(rng) < zero_fraction ? 0.0 : expo(rng);
    }
    if (per_row && m.row(i).sum() == 0.0) m(i, 0) = 1.0;
  }
  if (per_row) {
    for (int i = 0; i < rows; ++i) m.row(i) /= m.row(i).sum();
  } else {
    if (m.sum() == 0.0) m(0, 0) = 1.0;
    m /= m.sum();
  }
  return m;
}

}  // namespace

Eigen::MatrixXd RandomJoint(std::mt19937_64& rng, int rows, int cols,
                            double zero_fraction) {
  return RandomRowsSumming(rng, rows, cols, zero_fraction, false);
}

Eigen::MatrixXd RandomChannel(std::mt19937_64& rng, int inputs, int outputs,
                              double zero_fraction) {
  return RandomRowsSumming(rng, inputs, outputs, zero_fraction, true);
}

BiboDraw RandomBibo(std::mt19937_64& rng, double margin) {
  std::uniform_real_distribution<double> p_dist(0.5, 1.0);
  std::uniform_real_distribution<double> a_dist(0.0, 0.5);
  while (true) {
    BiboDraw d{p_dist(rng), a_dist(rng), a_dist(rng)};
    if ((1.0 - d.alpha) * (1.0 - d.p) - d.beta * d.p > margin) return d;
  }
}

VertexOptimum VertexEnumerationMax(const LinearProgram& program) {
  const int n = program.num_variables();
  // Candidate active rows: inequalities, then x_j >= 0 written as -x_j <= 0.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (const auto& c : program.inequalities) {
    a.push_back(c.coefficients);
    b.push_back(c.rhs);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(n, 0.0);
    row[j] = -1.0;
    a.push_back(row);
    b.push_back(0.0);
  }
  // An all-zero equality is either vacuous or unsatisfiable; keeping it would
  // make every candidate system singular.
  std::vector<LinearConstraint> equalities;
  for (const auto& c : program.equalities) {
    const bool zero = std::all_of(c.coefficients.begin(), c.coefficients.end(),
                                  [](double v) { return v == 0.0; });
    if (!zero) {
      equalities.push_back(c);
    } else if (c.rhs != 0.0) {
      return VertexOptimum{};
    }
  }
  const int num_eq = static_cast<int>(equalities.size());
  const int free_rows = n - num_eq;
  VertexOptimum best;
  if (free_rows < 0) return best;

  auto feasible = [&](const Eigen::VectorXd& x) {
    for (const auto& c : program.equalities) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += c.coefficients[j] * x[j];
      if (std::abs(s - c.rhs) > 1e-9) return false;
    }
    for (size_t i = 0; i < a.size(); ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += a[i][j] * x[j];
      if (s > b[i] + 1e-9) return false;
    }
    return true;
  };

  std::vector<int> chosen;
  std::function<void(int)> recurse = [&](int start) {
    if (static_cast<int>(chosen.size()) == free_rows) {
      Eigen::MatrixXd m(n, n);
      Eigen::VectorXd rhs(n);
      for (int i = 0; i < num_eq; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = equalities[i].coefficients[j];
        rhs[i] = equalities[i].rhs;
      }
      for (int k = 0; k < free_rows; ++k) {
        for (int j = 0; j < n; ++j) m(num_eq + k, j) = a[chosen[k]][j];
        rhs[num_eq + k] = b[chosen[k]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      if (!lu.isInvertible()) return;
      const Eigen::VectorXd x = lu.solve(rhs);
      if (!feasible(x)) return;
      double value = 0.0;
      for (int j = 0; j < n; ++j) value += program.objective[j] * x[j];
      if (!best.feasible || value > best.value) best = {true, value};
      return;
    }
    for (int i = start; i < static_cast<int>(a.size()); ++i) {
      chosen.push_back(i);
      recurse(i + 1);
      chosen.pop_back();
    }
  };
  recurse(0);
  return best;
}

double BinaryFilterGridSearch(const Rows& joint, double eps, int grid) {
  double best = -1.0;
  for (int i = 0; i < grid; ++i) {
    const double a = static_cast<double>(i) / (grid - 1);
    for (int k = 0; k < grid; ++k) {
      const double b = static_cast<double>(k) / (grid - 1);
      const Rows filter = {{a, 1.0 - a}, {b, 1.0 - b}};
      if (NaivePrivacy(joint, filter) > eps + 1e-12) continue;
      best = std::max(best, NaiveUtility(joint, filter));
    }
  }
  return best;
}

}  // namespace pguess::testing

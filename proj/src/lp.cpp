#include "cpfact/lp.hpp"

#include <algorithm>

namespace cpfact {

namespace {

// User rows plus the bound rows derived from nontrivial variable bounds.
struct FlatRow {
  VectorXq coeffs;
  RowSense sense;
  Rational rhs;
};

struct Flattened {
  std::vector<FlatRow> rows;
  std::vector<bool> split;  // per variable: represented as p - m?
};

Flattened flatten(const LinearProgram& lp) {
  Flattened out;
  const Index n = lp.num_vars();
  out.split.resize(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const auto& lo = lp.lower[static_cast<std::size_t>(j)];
    out.split[static_cast<std::size_t>(j)] = !(lo.has_value() && *lo == 0);
  }
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    out.rows.push_back({lp.rows[i], lp.senses[i], lp.rhs[i]});
  for (Index j = 0; j < n; ++j) {
    const auto& lo = lp.lower[static_cast<std::size_t>(j)];
    if (lo.has_value() && *lo != 0) {
      VectorXq e = VectorXq::Zero(n);
      e[j] = 1;
      out.rows.push_back({std::move(e), RowSense::GreaterEqual, *lo});
    }
  }
  for (Index j = 0; j < n; ++j) {
    const auto& up = lp.upper[static_cast<std::size_t>(j)];
    if (up.has_value()) {
      VectorXq e = VectorXq::Zero(n);
      e[j] = 1;
      out.rows.push_back({std::move(e), RowSense::LessEqual, *up});
    }
  }
  return out;
}

class Tableau {
 public:
  Tableau(const LinearProgram& lp, PivotMethod method) : lp_(lp), method_(method) {
    flat_ = flatten(lp);
    const Index nvars = lp.num_vars();
    pcol_.assign(static_cast<std::size_t>(nvars), -1);
    mcol_.assign(static_cast<std::size_t>(nvars), -1);
    Index col = 0;
    for (Index j = 0; j < nvars; ++j) {
      pcol_[static_cast<std::size_t>(j)] = col++;
      if (flat_.split[static_cast<std::size_t>(j)]) mcol_[static_cast<std::size_t>(j)] = col++;
    }
    nstruct_ = col;

    const Index m = static_cast<Index>(flat_.rows.size());
    sigma_.assign(static_cast<std::size_t>(m), 1);
    // Internal senses after flipping rows to b >= 0.
    std::vector<RowSense> sense(static_cast<std::size_t>(m));
    Index nslack = 0, nart = 0;
    for (Index i = 0; i < m; ++i) {
      const auto& r = flat_.rows[static_cast<std::size_t>(i)];
      const int sgn = (r.rhs < 0) ? -1 : 1;
      sigma_[static_cast<std::size_t>(i)] = sgn;
      RowSense s = r.sense;
      if (sgn < 0 && s == RowSense::LessEqual) s = RowSense::GreaterEqual;
      else if (sgn < 0 && s == RowSense::GreaterEqual) s = RowSense::LessEqual;
      sense[static_cast<std::size_t>(i)] = s;
      if (s != RowSense::Equal) ++nslack;
      if (s != RowSense::LessEqual) ++nart;  // artificials only where no slack can start
    }
    art_first_ = nstruct_ + nslack;
    ncols_ = art_first_ + nart;
    a_ = MatrixXq::Zero(m, ncols_);
    b_ = VectorXq::Zero(m);
    basis_.assign(static_cast<std::size_t>(m), -1);
    start_col_.assign(static_cast<std::size_t>(m), -1);

    Index slack = nstruct_;
    Index art = art_first_;
    for (Index i = 0; i < m; ++i) {
      const auto& r = flat_.rows[static_cast<std::size_t>(i)];
      const int sgn = sigma_[static_cast<std::size_t>(i)];
      for (Index j = 0; j < nvars; ++j) {
        const Rational c = sgn * r.coeffs[j];
        if (c == 0) continue;
        a_(i, pcol_[static_cast<std::size_t>(j)]) = c;
        if (mcol_[static_cast<std::size_t>(j)] >= 0) a_(i, mcol_[static_cast<std::size_t>(j)]) = -c;
      }
      b_[i] = sgn * r.rhs;
      switch (sense[static_cast<std::size_t>(i)]) {
        case RowSense::LessEqual:
          a_(i, slack) = 1;
          basis_[static_cast<std::size_t>(i)] = slack;
          start_col_[static_cast<std::size_t>(i)] = slack;
          ++slack;
          break;
        case RowSense::GreaterEqual:
          a_(i, slack++) = -1;
          [[fallthrough]];
        case RowSense::Equal:
          a_(i, art) = 1;
          basis_[static_cast<std::size_t>(i)] = art;
          start_col_[static_cast<std::size_t>(i)] = art;
          ++art;
          break;
      }
    }
  }

  LpOutcome run(bool phase2) {
    LpOutcome out;

    // Phase I: minimize the sum of artificials.
    ban_artificials_ = false;
    if (ncols_ > art_first_) {
      VectorXq cost1 = VectorXq::Zero(ncols_);
      for (Index j = art_first_; j < ncols_; ++j) cost1[j] = 1;
      auto [red, value] = reduced_costs(cost1);
      iterate(red, value, nullptr);  // always bounded below by 0
      if (value > 0) {
        out.tag = LpOutcome::Tag::Infeasible;
        out.farkas = extract_farkas(red, cost1);
        return out;
      }
      purge_artificials();
    }
    ban_artificials_ = true;

    if (phase2) {
      VectorXq cost2 = VectorXq::Zero(ncols_);
      const int dsgn = (lp_.direction == Direction::Maximize) ? -1 : 1;
      for (Index j = 0; j < lp_.num_vars(); ++j) {
        cost2[pcol_[static_cast<std::size_t>(j)]] = dsgn * lp_.objective[j];
        if (mcol_[static_cast<std::size_t>(j)] >= 0)
          cost2[mcol_[static_cast<std::size_t>(j)]] = -dsgn * lp_.objective[j];
      }
      auto [red, value] = reduced_costs(cost2);
      Index ray_col = -1;
      if (!iterate(red, value, &ray_col)) {
        out.tag = LpOutcome::Tag::Unbounded;
        out.ray = extract_ray(ray_col);
        return out;
      }
    }

    out.tag = LpOutcome::Tag::Optimal;
    out.solution = VectorXq::Zero(lp_.num_vars());
    VectorXq colval = VectorXq::Zero(ncols_);
    for (Index i = 0; i < rows(); ++i) colval[basis_[static_cast<std::size_t>(i)]] = b_[i];
    for (Index j = 0; j < lp_.num_vars(); ++j) {
      out.solution[j] = colval[pcol_[static_cast<std::size_t>(j)]];
      if (mcol_[static_cast<std::size_t>(j)] >= 0)
        out.solution[j] -= colval[mcol_[static_cast<std::size_t>(j)]];
    }
    out.objective_value = lp_.objective.dot(out.solution);
    for (Index i = 0; i < rows(); ++i) {
      const Index c = basis_[static_cast<std::size_t>(i)];
      for (Index j = 0; j < lp_.num_vars(); ++j)
        if (c == pcol_[static_cast<std::size_t>(j)] || c == mcol_[static_cast<std::size_t>(j)]) {
          out.basis.push_back(j);
          break;
        }
    }
    std::sort(out.basis.begin(), out.basis.end());
    out.basis.erase(std::unique(out.basis.begin(), out.basis.end()), out.basis.end());
    return out;
  }

 private:
  Index rows() const { return a_.rows(); }

  std::pair<VectorXq, Rational> reduced_costs(const VectorXq& cost) const {
    VectorXq red = cost;
    Rational value = 0;
    for (Index i = 0; i < rows(); ++i) {
      const Rational cb = cost[basis_[static_cast<std::size_t>(i)]];
      if (cb != 0) {
        red -= cb * a_.row(i).transpose();
        value += cb * b_[i];
      }
    }
    return {std::move(red), std::move(value)};
  }

  Index last_col() const { return ban_artificials_ ? art_first_ : ncols_; }

  // Pivots to optimality. Returns false on unboundedness (ray_col set).
  bool iterate(VectorXq& red, Rational& value, Index* ray_col) {
    for (;;) {
      Index enter = -1;
      if (method_ == PivotMethod::Bland) {
        for (Index j = 0; j < last_col(); ++j)
          if (red[j] < 0) {
            enter = j;
            break;
          }
      } else {
        for (Index j = 0; j < last_col(); ++j)
          if (red[j] < 0 && (enter < 0 || red[j] < red[enter])) enter = j;
      }
      if (enter < 0) return true;

      Index leave = -1;
      for (Index i = 0; i < rows(); ++i) {
        if (a_(i, enter) <= 0) continue;
        if (leave < 0) {
          leave = i;
          continue;
        }
        const Rational cur = b_[i] / a_(i, enter);
        const Rational best = b_[leave] / a_(leave, enter);
        if (cur < best) {
          leave = i;
        } else if (cur == best) {
          if (method_ == PivotMethod::Bland) {
            if (basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])
              leave = i;
          } else if (lex_smaller(i, leave, enter)) {
            leave = i;
          }
        }
      }
      if (leave < 0) {
        if (ray_col) *ray_col = enter;
        return false;
      }
      pivot(leave, enter, &red, &value);
    }
  }

  bool lex_smaller(Index i, Index k, Index enter) const {
    for (Index j = 0; j < ncols_; ++j) {
      const Rational vi = a_(i, j) / a_(i, enter);
      const Rational vk = a_(k, j) / a_(k, enter);
      if (vi != vk) return vi < vk;
    }
    return false;
  }

  void pivot(Index row, Index col, VectorXq* red, Rational* value) {
    const Rational p = a_(row, col);
    a_.row(row) /= p;
    b_[row] /= p;
    for (Index i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const Rational f = a_(i, col);
      if (f != 0) {
        a_.row(i) -= f * a_.row(row);
        b_[i] -= f * b_[row];
      }
    }
    if (red) {
      const Rational rf = (*red)[col];
      if (rf != 0) {
        *red -= rf * a_.row(row).transpose();
        *value += rf * b_[row];
      }
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // After a zero-value phase I, pivot leftover artificials out of the basis;
  // rows that cannot release one are 0 = 0 over the real columns.
  void purge_artificials() {
    for (Index i = 0; i < rows();) {
      if (basis_[static_cast<std::size_t>(i)] < art_first_) {
        ++i;
        continue;
      }
      Index col = -1;
      for (Index j = 0; j < art_first_ && col < 0; ++j)
        if (a_(i, j) != 0) col = j;
      if (col >= 0) {
        pivot(i, col, nullptr, nullptr);
        ++i;
      } else {
        remove_row(i);
      }
    }
  }

  void remove_row(Index i) {
    const Index m = rows();
    MatrixXq a2(m - 1, ncols_);
    VectorXq b2(m - 1);
    for (Index k = 0, t = 0; k < m; ++k) {
      if (k == i) continue;
      a2.row(t) = a_.row(k);
      b2[t] = b_[k];
      ++t;
    }
    a_ = std::move(a2);
    b_ = std::move(b2);
    basis_.erase(basis_.begin() + i);
    // sigma_/start_col_ keep the original row indexing; they are only read
    // for Farkas extraction, which happens before any removal.
  }

  VectorXq extract_farkas(const VectorXq& red, const VectorXq& cost1) const {
    // Simplex multipliers: pi_i = c_s - red_s for the start column s of row
    // i, whose original tableau column was +e_i.
    VectorXq farkas(rows());
    for (Index i = 0; i < rows(); ++i) {
      const Index s = start_col_[static_cast<std::size_t>(i)];
      farkas[i] = sigma_[static_cast<std::size_t>(i)] * (cost1[s] - red[s]);
    }
    return farkas;
  }

  VectorXq extract_ray(Index enter) const {
    VectorXq colray = VectorXq::Zero(ncols_);
    colray[enter] = 1;
    for (Index i = 0; i < rows(); ++i)
      colray[basis_[static_cast<std::size_t>(i)]] = -a_(i, enter);
    VectorXq ray = VectorXq::Zero(lp_.num_vars());
    for (Index j = 0; j < lp_.num_vars(); ++j) {
      ray[j] = colray[pcol_[static_cast<std::size_t>(j)]];
      if (mcol_[static_cast<std::size_t>(j)] >= 0)
        ray[j] -= colray[mcol_[static_cast<std::size_t>(j)]];
    }
    return ray;
  }

  const LinearProgram& lp_;
  PivotMethod method_;
  Flattened flat_;
  std::vector<Index> pcol_, mcol_;
  Index nstruct_ = 0;
  Index art_first_ = 0;
  Index ncols_ = 0;
  MatrixXq a_;
  VectorXq b_;
  std::vector<Index> basis_;
  std::vector<Index> start_col_;
  std::vector<int> sigma_;
  bool ban_artificials_ = false;
};

}  // namespace

LpOutcome solve(const LinearProgram& lp, PivotMethod method) {
  Tableau t(lp, method);
  return t.run(true);
}

LpOutcome feasible_point(const LinearProgram& lp, PivotMethod method) {
  Tableau t(lp, method);
  return t.run(false);
}

bool check_farkas(const LinearProgram& lp, const VectorXq& farkas) {
  const Flattened flat = flatten(lp);
  if (farkas.size() != static_cast<Index>(flat.rows.size())) return false;
  Rational yb = 0;
  VectorXq ya = VectorXq::Zero(lp.num_vars());
  for (std::size_t i = 0; i < flat.rows.size(); ++i) {
    const Rational& y = farkas[static_cast<Index>(i)];
    if (flat.rows[i].sense == RowSense::LessEqual && y > 0) return false;
    if (flat.rows[i].sense == RowSense::GreaterEqual && y < 0) return false;
    yb += y * flat.rows[i].rhs;
    ya += y * flat.rows[i].coeffs;
  }
  for (Index j = 0; j < lp.num_vars(); ++j) {
    if (flat.split[static_cast<std::size_t>(j)]) {
      if (ya[j] != 0) return false;  // free directions must cancel
    } else if (ya[j] > 0) {
      return false;
    }
  }
  return yb > 0;
}

}  // namespace cpfact

#include <cmath>
#include <vector>

#include <Eigen/SparseCore>

#include "discrete_terms.hpp"
#include "skydyon/solver.hpp"

namespace skydyon {

using detail::sq;

namespace {

enum Field : int { kA = 0, kF = 1, kG = 2 };

struct Assembler {
  std::size_t last;
  std::vector<Eigen::Triplet<real>> entries;

  void add(std::size_t row_node, int row_field, std::size_t col_node, int col_field, real v) {
    if (col_node < 1 || col_node > last || v == 0) return;
    entries.emplace_back(static_cast<int>(3 * (row_node - 1) + row_field),
                         static_cast<int>(3 * (col_node - 1) + col_field), v);
  }
};

}  // namespace

Eigen::Matrix<real, Eigen::Dynamic, 1> stacked_residual(const ModelParams& p, const FieldProfile& s) {
  const std::size_t last = s.last_unknown();
  Eigen::Matrix<real, Eigen::Dynamic, 1> F(3 * last);
  for (std::size_t i = 1; i <= last; ++i) {
    const NodeResidual r = node_residual(p, s, i);
    F(3 * (i - 1) + kA) = r.a;
    F(3 * (i - 1) + kF) = r.f;
    F(3 * (i - 1) + kG) = r.g;
  }
  return F;
}

Eigen::SparseMatrix<real> assemble_jacobian(const ModelParams& p, const FieldProfile& s) {
  const std::size_t last = s.last_unknown();
  const real k = p.kappa;
  Assembler J{last, {}};
  J.entries.reserve(27 * last);

  for (std::size_t i = 1; i <= last; ++i) {
    const detail::NodeState n = detail::gather(p, s, i);
    const std::size_t m = i - 1;
    const std::size_t nb = i + 1;
    const real w = n.w;
    const real a = n.a, g = n.g;
    const real a2 = sq(a);
    const real r2 = sq(n.r);

    // Slope-average derivatives.
    real dF2_m = -n.Dfm / w;
    real dF2_i = n.has_right ? (n.Dfm - n.Dfp) / w : n.Dfm / w;
    const real dF2_n = n.has_right ? n.Dfp / w : 0;

    // a-equation source B.
    const real dB_da = (3 * a2 - 1) / r2 + n.S / 4 + k * n.S * n.F2 + 3 * k * a2 * sq(n.S) / r2 -
                       sq(g) / 2;
    const real dB_df_i = a * n.Sp / 4 + k * a * n.Sp * n.F2 + k * a * n.S * dF2_i +
                         2 * k * a * a2 * n.S * n.Sp / r2;
    const real dB_df_m = k * a * n.S * dF2_m;
    const real dB_df_n = k * a * n.S * dF2_n;
    const real dB_dg = -a * g;

    // f-equation source T.
    const real sc = n.sc;
    const real dT_da = 4 * a * sc + 16 * k * a * sc * n.F2 + 32 * k * a * a2 * n.S * sc / r2;
    const real dT_df_i = 2 * a2 * n.c2 + 8 * k * a2 * (n.c2 * n.F2 + sc * dF2_i) +
                         8 * k * sq(a2) * (2 * sq(sc) + n.S * n.c2) / r2;
    const real dT_df_m = 8 * k * a2 * sc * dF2_m;
    const real dT_df_n = 8 * k * a2 * sc * dF2_n;

    // Derivatives of the nodal Skyrme coefficient s_j = a_j^2 sin^2 f_j.
    const real ds_da_m = 2 * n.a_m * n.S_m, ds_df_m = sq(n.a_m) * n.Sp_m;
    const real ds_da_i = 2 * a * n.S, ds_df_i = a2 * n.Sp;

    // res_a
    J.add(i, kA, m, kA, 1 / (n.hm * w));
    J.add(i, kA, m, kF, -dB_df_m);
    J.add(i, kA, i, kG, -dB_dg);
    // res_f, left neighbour
    J.add(i, kF, m, kF, n.pm / (n.hm * w) + 8 * k * (-ds_df_m * n.Dfm / 2 + n.cm / n.hm) / w - dT_df_m);
    J.add(i, kF, m, kA, 8 * k * (-ds_da_m * n.Dfm / 2) / w);
    // res_g
    J.add(i, kG, m, kG, n.pm / (n.hm * w));
    J.add(i, kG, i, kA, -4 * a * g);

    if (n.has_right) {
      const real ds_da_n = 2 * n.a_n * n.S_n, ds_df_n = sq(n.a_n) * n.Sp_n;
      J.add(i, kA, i, kA, -(1 / n.hp + 1 / n.hm) / w - dB_da);
      J.add(i, kA, i, kF, -dB_df_i);
      J.add(i, kA, nb, kA, 1 / (n.hp * w));
      J.add(i, kA, nb, kF, -dB_df_n);

      J.add(i, kF, i, kF,
            -(n.pp / n.hp + n.pm / n.hm) / w +
                8 * k * (ds_df_i * (n.Dfp - n.Dfm) / 2 - n.cp / n.hp - n.cm / n.hm) / w - dT_df_i);
      J.add(i, kF, i, kA, 8 * k * (ds_da_i * (n.Dfp - n.Dfm) / 2) / w - dT_da);
      J.add(i, kF, nb, kF, n.pp / (n.hp * w) + 8 * k * (ds_df_n * n.Dfp / 2 + n.cp / n.hp) / w - dT_df_n);
      J.add(i, kF, nb, kA, 8 * k * (ds_da_n * n.Dfp / 2) / w);

      J.add(i, kG, i, kG, -(n.pp / n.hp + n.pm / n.hm) / w - 2 * a2);
      J.add(i, kG, nb, kG, n.pp / (n.hp * w));
    } else {
      const real lam = n.lambda;
      const real dLam_df = n.Sp / (2 * lam);
      const real dLam_dg = -2 * g / lam;
      J.add(i, kA, i, kA, -(n.Lambda / 4) / w - 1 / (n.hm * w) - dB_da);
      J.add(i, kA, i, kF, -(a / 4) * dLam_df / w - dB_df_i);
      J.add(i, kA, i, kG, -(a / 4) * dLam_dg / w);

      J.add(i, kF, i, kF,
            (-n.R - n.pm / n.hm) / w - 8 * k * (ds_df_i * n.Dfm / 2 + n.cm / n.hm) / w - dT_df_i -
                a2 * n.c2 / (lam * w));
      J.add(i, kF, i, kA, -8 * k * ds_da_i * n.Dfm / (2 * w) - dT_da - a * n.Sp / (lam * w));

      J.add(i, kG, i, kG, (-n.R - n.pm / n.hm) / w - 2 * a2 - a2 / (lam * w));
      J.add(i, kG, i, kA, -2 * a * g / (lam * w));
    }
  }

  const int dim = static_cast<int>(3 * last);
  Eigen::SparseMatrix<real> out(dim, dim);
  out.setFromTriplets(J.entries.begin(), J.entries.end());
  return out;
}

}  // namespace skydyon

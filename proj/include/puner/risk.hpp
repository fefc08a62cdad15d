// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "puner/common.hpp"

namespace puner {

enum class Loss { Mae, Bce };

inline std::string_view loss_name(Loss l) { return l == Loss::Mae ? "mae" : "bce"; }

inline Loss loss_from_string(std::string_view s) {
  if (s == "mae") return Loss::Mae;
  if (s == "bce") return Loss::Bce;
  fail_input("unknown loss '", s, "' (expected 'mae' or 'bce')");
}

/// Point loss l(yhat, y). MAE is bounded in [0,1]: l(yhat,1) = 1-yhat,
/// l(yhat,0) = yhat. BCE is the negative log-likelihood.
inline double point_loss(Loss loss, double yhat, int y) {
  if (loss == Loss::Mae) return y == 1 ? 1.0 - yhat : yhat;
  return y == 1 ? -std::log(yhat) : -std::log(1.0 - yhat);
}

/// Derivative of the point loss with respect to the logit z, where
/// yhat = logistic(z). Both losses have closed forms in yhat alone.
inline double point_loss_dz(Loss loss, double yhat, int y) {
  if (loss == Loss::Mae) {
    const double s = yhat * (1.0 - yhat);
    return y == 1 ? -s : s;
  }
  return y == 1 ? yhat - 1.0 : yhat;
}

/// Mean of l(yhat_i, y_i) over the list.
inline double empirical_risk(std::span<const std::pair<double, int>> scored, Loss loss) {
  if (scored.empty()) fail("empirical_risk: empty example list");
  double sum = 0.0;
  for (const auto& [yhat, y] : scored) sum += point_loss(loss, yhat, y);
  return sum / static_cast<double>(scored.size());
}

struct PuRisk {
  double value = 0.0;
  bool clamp_active = false;
  /// The three summands before clamping, for traces and tests.
  double positive_term = 0.0;    // (1/n_p) sum l(yhat_p, 1)
  double unlabeled_term = 0.0;   // (1/n_u) sum l(yhat_u, 0)
  double correction_term = 0.0;  // (pi_p/n_p) sum l(yhat_p, 0)
};

/// Non-negative positive-unlabeled risk:
///
///   R = (1/n_p) sum l(yhat_p, 1)
///     + max(0, (1/n_u) sum l(yhat_u, 0) - (pi_p/n_p) sum l(yhat_p, 0))
///
/// clamp_active reports that the max chose 0, i.e. the inner difference was
/// strictly negative; at an exact zero tie the unclamped branch is reported
/// so its (zero-valued) gradient still flows. pi_p = 0 is allowed as a
/// degenerate boundary: the correction vanishes and the value reduces to the
/// plain positive/negative empirical risk with unlabeled examples as
/// negatives.
inline PuRisk pu_risk(std::span<const double> pos_scores, std::span<const double> unl_scores,
                      double pi_p, Loss loss) {
  if (pos_scores.empty()) fail("pu_risk: empty positive set");
  if (unl_scores.empty()) fail("pu_risk: empty unlabeled set");
  if (!(pi_p >= 0.0 && pi_p < 1.0)) fail("pu_risk: class prior ", pi_p, " outside [0,1)");

  PuRisk r;
  double pos1 = 0.0, pos0 = 0.0;
  for (double yhat : pos_scores) {
    pos1 += point_loss(loss, yhat, 1);
    pos0 += point_loss(loss, yhat, 0);
  }
  double unl0 = 0.0;
  for (double yhat : unl_scores) unl0 += point_loss(loss, yhat, 0);

  const double n_p = static_cast<double>(pos_scores.size());
  const double n_u = static_cast<double>(unl_scores.size());
  r.positive_term = pos1 / n_p;
  r.unlabeled_term = unl0 / n_u;
  r.correction_term = pi_p / n_p * pos0;

  const double inner = r.unlabeled_term - r.correction_term;
  r.clamp_active = inner < 0.0;
  r.value = r.positive_term + (r.clamp_active ? 0.0 : inner);
  return r;
}

}  // namespace puner

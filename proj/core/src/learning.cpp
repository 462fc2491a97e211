#include "fleetsim/learning.hpp"

#include <cmath>
#include <stdexcept>

namespace fleetsim {

Vec3 standardize(const FeatureVector& x, const Standardizer& s) {
  return {(x.distance_m - s.mean[0]) / s.stddev[0],
          (x.mass_kg - s.mean[1]) / s.stddev[1],
          (x.soc_pct - s.mean[2]) / s.stddev[2]};
}

double BidModel::learning_rate() const {
  return eta0 / (1.0 + eta0 * alpha * static_cast<double>(step_count));
}

double decision_value(const BidModel& m, const Vec3& x_std) {
  return m.w[0] * x_std[0] + m.w[1] * x_std[1] + m.w[2] * x_std[2] + m.b;
}

bool accepts(const BidModel& m, const Vec3& x_std) {
  return decision_value(m, x_std) >= 0.0;
}

std::optional<double> confidence(const BidModel& m, const Vec3& x_std) {
  double norm =
      std::sqrt(m.w[0] * m.w[0] + m.w[1] * m.w[1] + m.w[2] * m.w[2]);
  if (norm == 0.0) return std::nullopt;
  return decision_value(m, x_std) / norm;
}

double modified_huber_loss(int label, double f) {
  double z = (2.0 * label - 1.0) * f;
  if (z >= 1.0) return 0.0;
  if (z >= -1.0) {
    double d = 1.0 - z;
    return d * d;
  }
  return -4.0 * z;
}

namespace {

// dL/df of the modified Huber loss; C1 in f, so the two branch joints have
// matching one-sided derivatives.
double loss_df(int label, double f) {
  double sign = 2.0 * label - 1.0;
  double z = sign * f;
  if (z >= 1.0) return 0.0;
  if (z >= -1.0) return -2.0 * (1.0 - z) * sign;
  return -4.0 * sign;
}

}  // namespace

LossGradient loss_gradient(const BidModel& m, const Vec3& x_std, int label) {
  double df = loss_df(label, decision_value(m, x_std));
  LossGradient g;
  for (int i = 0; i < 3; ++i) g.w[i] = df * x_std[i] + m.alpha * m.w[i];
  g.b = df;
  return g;
}

void sgd_step(BidModel& m, const LabelledSample& sample,
              const Standardizer& s) {
  Vec3 x_std = standardize(sample.features, s);
  double eta = m.learning_rate();
  LossGradient g = loss_gradient(m, x_std, sample.label);
  for (int i = 0; i < 3; ++i) m.w[i] -= eta * g.w[i];
  m.b -= eta * g.b;
  ++m.step_count;
}

BidModel init_model(double alpha, double eta0, const TaskBounds& bounds,
                    const Standardizer& s) {
  BidModel m;
  m.alpha = alpha;
  m.eta0 = eta0;

  LabelledSample easy{{bounds.distance_min_m, bounds.mass_min_kg, 100.0}, 1};
  LabelledSample hard{{bounds.distance_max_m, bounds.mass_max_kg, 0.0}, 0};
  Vec3 x_easy = standardize(easy.features, s);
  Vec3 x_hard = standardize(hard.features, s);

  const LabelledSample* seeds[2] = {&easy, &hard};
  for (int i = 0; m.step_count < 1000; ++i) {
    sgd_step(m, *seeds[i % 2], s);
    if (decision_value(m, x_easy) >= 0.0 && decision_value(m, x_hard) < 0.0)
      return m;
  }
  throw std::runtime_error(
      "init_model: seed samples not separated within 1000 steps");
}

}  // namespace fleetsim

#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace fleetsim {

using Vec3 = std::array<double, 3>;

// Raw bidding features: task distance (m), parcel mass (kg), SoC at decision
// time (percent).
struct FeatureVector {
  double distance_m = 0.0;
  double mass_kg = 0.0;
  double soc_pct = 0.0;
};

// Fixed feature standardisation applied before every model evaluation and
// every gradient step.
struct Standardizer {
  Vec3 mean{3500.0, 2.75, 50.0};
  Vec3 stddev{1443.38, 1.298, 28.87};
};

Vec3 standardize(const FeatureVector& x, const Standardizer& s);

// Linear success predictor with SGD state. f(x) = w . x_std + b; a task is
// accepted when f >= 0.
struct BidModel {
  Vec3 w{0.0, 0.0, 0.0};
  double b = 0.0;
  double alpha = 0.01;  // l2 regularisation strength
  double eta0 = 2.0;    // initial learning rate
  std::int64_t step_count = 0;

  // eta_t = eta0 / (1 + eta0 * alpha * t), evaluated before the step.
  double learning_rate() const;
};

struct LabelledSample {
  FeatureVector features;
  int label = 0;  // 1 = delivery succeeded, 0 = aborted or lost
};

// Inclusive feature bounds of the task distribution; used to build the two
// synthetic samples that seed a fresh model.
struct TaskBounds {
  double distance_min_m = 1000.0;
  double distance_max_m = 6000.0;
  double mass_min_kg = 0.5;
  double mass_max_kg = 5.0;
};

double decision_value(const BidModel& m, const Vec3& x_std);
bool accepts(const BidModel& m, const Vec3& x_std);

// Signed distance from x_std to the decision boundary, f / ||w||.
// Empty when ||w|| == 0 (no boundary yet).
std::optional<double> confidence(const BidModel& m, const Vec3& x_std);

// Modified Huber loss of margin z = (2y - 1) * f.
double modified_huber_loss(int label, double f);

struct LossGradient {
  Vec3 w{0.0, 0.0, 0.0};
  double b = 0.0;
};

// Analytic gradient of modified_huber_loss + alpha/2 * ||w||^2 at the
// model's current parameters. The bias is not regularised.
LossGradient loss_gradient(const BidModel& m, const Vec3& x_std, int label);

// One SGD step on a labelled sample; standardises, applies the decayed
// learning rate, and increments step_count.
void sgd_step(BidModel& m, const LabelledSample& sample, const Standardizer& s);

// Fresh model trained on the two extreme synthetic samples
// ([d_min, m_min, soc 100] -> 1 and [d_max, m_max, soc 0] -> 0),
// alternating steps until both are classified correctly.
// Throws std::runtime_error if 1000 steps do not suffice.
BidModel init_model(double alpha, double eta0, const TaskBounds& bounds,
                    const Standardizer& s);

}  // namespace fleetsim

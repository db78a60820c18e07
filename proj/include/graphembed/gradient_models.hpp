#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "graphembed/errors.hpp"

namespace graphembed {

// Similarity models for force training.  Sigmoid scores a vertex pair by the
// dot product of their coordinates; the others by Euclidean distance.
enum class Model { Sigmoid, TDist, FruchtermanReingold, LinLog, ForceAtlas };

inline Model parse_model(const std::string& name) {
  if (name == "sigmoid") return Model::Sigmoid;
  if (name == "tdist") return Model::TDist;
  if (name == "fr") return Model::FruchtermanReingold;
  if (name == "linlog") return Model::LinLog;
  if (name == "fa" || name == "forceatlas") return Model::ForceAtlas;
  throw ValidationError("unknown model \"" + name +
                        "\" (expected sigmoid|tdist|fr|linlog|forceatlas)");
}

inline const char* model_name(Model m) {
  switch (m) {
    case Model::Sigmoid: return "sigmoid";
    case Model::TDist: return "tdist";
    case Model::FruchtermanReingold: return "fr";
    case Model::LinLog: return "linlog";
    case Model::ForceAtlas: return "forceatlas";
  }
  return "?";
}

// Distances below kDistanceFloor are clamped: the distance models have a
// pole at coincident points.  Dot products are clamped to ±kDotClamp before
// exponentiation so exp() cannot overflow.
inline constexpr double kDistanceFloor = 1e-3;
inline constexpr double kDotClamp = 30.0;

inline double clamped_dot(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) s += a[j] * b[j];
  return std::clamp(s, -kDotClamp, kDotClamp);
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

namespace detail {

// Distance geometry shared by the tdist and spring models: clamped length
// t of z_u - z_v and the unit vector from v toward u (zero if coincident).
struct PairGeometry {
  double t;
  std::vector<double> unit;
};

inline PairGeometry pair_geometry(const double* zu, const double* zv, std::size_t d) {
  PairGeometry g;
  g.unit.resize(d);
  double sq = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    g.unit[j] = zu[j] - zv[j];
    sq += g.unit[j] * g.unit[j];
  }
  g.t = std::max(std::sqrt(sq), kDistanceFloor);
  for (std::size_t j = 0; j < d; ++j) g.unit[j] /= g.t;
  return g;
}

// Magnitude of the attractive factor per model (distance models only).
inline double spring_factor(Model m, double t) {
  switch (m) {
    case Model::FruchtermanReingold: return t * t;
    case Model::LinLog: return std::log1p(t);
    case Model::ForceAtlas: return t;
    default:
      throw ValidationError("spring factor requested for non-spring model");
  }
}

}  // namespace detail

struct GradPair {
  std::vector<double> attractive;
  std::vector<double> repulsive;
};

// Dot-product model.  Returned vectors are gradients of the per-pair loss
// terms log(1+e^{-z_u·z_v}) (edge present) and log(1+e^{+z_u·z_v}) (edge
// absent) with respect to z_u; the descent update z -= lr * grad applies
// them directly.
inline GradPair sigmoid_grads(const double* zu, const double* zv, std::size_t d) {
  double sig = logistic(clamped_dot(zu, zv, d));
  GradPair out;
  out.attractive.resize(d);
  out.repulsive.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    out.attractive[j] = -(1.0 - sig) * zv[j];
    out.repulsive[j] = sig * zv[j];
  }
  return out;
}

// Cauchy-kernel distance model; gradients of log(1+t^2) and -log(t^2/(1+t^2))
// with respect to z_u, with t clamped below by kDistanceFloor.
inline GradPair tdist_grads(const double* zu, const double* zv, std::size_t d) {
  auto geo = detail::pair_geometry(zu, zv, d);
  double attr = 2.0 * geo.t / (1.0 + geo.t * geo.t);
  double rep = -2.0 / (geo.t * (1.0 + geo.t * geo.t));
  GradPair out;
  out.attractive.resize(d);
  out.repulsive.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    out.attractive[j] = attr * geo.unit[j];
    out.repulsive[j] = rep * geo.unit[j];
  }
  return out;
}

// Spring-electrical models expressed as displacements of z_u: attraction
// moves u toward v by the model's factor (FR t^2, LinLog log(1+t),
// ForceAtlas t), repulsion pushes it away by 1/t.  Note the convention
// differs from sigmoid_grads/tdist_grads: these are moves, not loss
// gradients; the trainer descends on the matching potentials, whose
// gradients are exactly the negated moves.
inline GradPair spring_grads(Model m, const double* zu, const double* zv, std::size_t d) {
  if (m != Model::FruchtermanReingold && m != Model::LinLog && m != Model::ForceAtlas)
    throw ValidationError("spring_grads expects fr, linlog, or forceatlas");
  auto geo = detail::pair_geometry(zu, zv, d);
  double attr = -detail::spring_factor(m, geo.t);
  double rep = 1.0 / geo.t;
  GradPair out;
  out.attractive.resize(d);
  out.repulsive.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    out.attractive[j] = attr * geo.unit[j];
    out.repulsive[j] = rep * geo.unit[j];
  }
  return out;
}

// Per-pair loss terms.  For distance models the attractive potentials are
// the antiderivatives of the factors (FR t^3/3, LinLog (1+t)log(1+t)-t,
// ForceAtlas t^2/2) and the repulsive potential is -log t, so analytic
// gradients and finite differences agree for every model.
inline double attractive_loss(Model m, const double* zu, const double* zv, std::size_t d) {
  switch (m) {
    case Model::Sigmoid: {
      double x = clamped_dot(zu, zv, d);
      return std::log1p(std::exp(-x));
    }
    case Model::TDist: {
      double t = detail::pair_geometry(zu, zv, d).t;
      return std::log1p(t * t);
    }
    case Model::FruchtermanReingold: {
      double t = detail::pair_geometry(zu, zv, d).t;
      return t * t * t / 3.0;
    }
    case Model::LinLog: {
      double t = detail::pair_geometry(zu, zv, d).t;
      return (1.0 + t) * std::log1p(t) - t;
    }
    case Model::ForceAtlas: {
      double t = detail::pair_geometry(zu, zv, d).t;
      return 0.5 * t * t;
    }
  }
  return 0.0;
}

inline double repulsive_loss(Model m, const double* zu, const double* zv, std::size_t d) {
  switch (m) {
    case Model::Sigmoid: {
      double x = clamped_dot(zu, zv, d);
      return std::log1p(std::exp(x));
    }
    case Model::TDist: {
      double t = detail::pair_geometry(zu, zv, d).t;
      return std::log1p(t * t) - std::log(t * t);
    }
    default: {
      double t = detail::pair_geometry(zu, zv, d).t;
      return -std::log(t);
    }
  }
}

// Hot-path accumulators used by the trainers: add the descent gradient of
// the pair term to acc without allocating.  For spring models this is the
// negated move (see spring_grads).  Attractive contributions scale with the
// edge weight; weight 1 is the unweighted case.
inline void add_attractive_gradient(Model m, const double* zu, const double* zv,
                                    std::size_t d, double* acc, double weight = 1.0) {
  if (m == Model::Sigmoid) {
    double coeff = -weight * (1.0 - logistic(clamped_dot(zu, zv, d)));
    for (std::size_t j = 0; j < d; ++j) acc[j] += coeff * zv[j];
    return;
  }
  double sq = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double diff = zu[j] - zv[j];
    sq += diff * diff;
  }
  double t = std::max(std::sqrt(sq), kDistanceFloor);
  double coeff;
  switch (m) {
    case Model::TDist: coeff = 2.0 / (1.0 + t * t); break;
    case Model::FruchtermanReingold: coeff = t; break;
    case Model::LinLog: coeff = std::log1p(t) / t; break;
    default: coeff = 1.0; break;  // ForceAtlas: factor t over distance t
  }
  coeff *= weight;
  for (std::size_t j = 0; j < d; ++j) acc[j] += coeff * (zu[j] - zv[j]);
}

inline void add_repulsive_gradient(Model m, const double* zu, const double* zv,
                                   std::size_t d, double* acc) {
  if (m == Model::Sigmoid) {
    double coeff = logistic(clamped_dot(zu, zv, d));
    for (std::size_t j = 0; j < d; ++j) acc[j] += coeff * zv[j];
    return;
  }
  double sq = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double diff = zu[j] - zv[j];
    sq += diff * diff;
  }
  double t = std::max(std::sqrt(sq), kDistanceFloor);
  double coeff;
  if (m == Model::TDist) {
    coeff = -2.0 / (t * t * (1.0 + t * t));
  } else {
    coeff = -1.0 / (t * t);  // spring repulsion: -(1/t) along the unit vector
  }
  for (std::size_t j = 0; j < d; ++j) acc[j] += coeff * (zu[j] - zv[j]);
}

}  // namespace graphembed

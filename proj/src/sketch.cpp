#include "sketchseed/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sketchseed/numeric.hpp"
#include "sketchseed/parallel.hpp"
#include "sketchseed/rng.hpp"

namespace sketchseed {

std::string to_string(SketchKind kind) {
  switch (kind) {
    case SketchKind::kGaussian:
      return "gaussian";
    case SketchKind::kRademacher:
      return "rademacher";
    case SketchKind::kIdentity:
      return "identity";
  }
  return "unknown";
}

SketchKind sketch_kind_from_string(const std::string& name) {
  if (name == "gaussian") return SketchKind::kGaussian;
  if (name == "rademacher") return SketchKind::kRademacher;
  if (name == "identity") return SketchKind::kIdentity;
  throw std::invalid_argument("unknown sketch kind '" + name + "'");
}

void validate_sketch_spec(const SketchSpec& spec) {
  if (spec.kind == SketchKind::kIdentity) return;
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw std::invalid_argument("sketch epsilon must lie in (0, 1)");
  }
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
    throw std::invalid_argument("sketch delta must lie in (0, 1)");
  }
  if (!(spec.c_m >= 1.0)) {
    throw std::invalid_argument("sketch c_m must be >= 1");
  }
}

std::size_t jl_dimension(std::size_t n, std::size_t d,
                         const SketchSpec& spec) {
  if (n < 1 || d < 1) {
    throw std::invalid_argument("jl_dimension requires n >= 1 and d >= 1");
  }
  if (spec.kind == SketchKind::kIdentity) return d;
  validate_sketch_spec(spec);
  const double raw = spec.c_m *
                     std::log(static_cast<double>(n) / spec.delta) /
                     (spec.epsilon * spec.epsilon);
  const auto m = static_cast<std::size_t>(std::ceil(raw));
  return std::clamp<std::size_t>(m, 1, d);
}

SketchedSet project(const PointSet& points, const SketchSpec& spec,
                    std::size_t forced_m) {
  validate_sketch_spec(spec);
  SketchedSet out;
  out.n = points.n;
  out.spec = spec;
  if (spec.kind == SketchKind::kIdentity) {
    out.m = points.d;
    out.rows = points.coords;
    return out;
  }
  const std::size_t m = forced_m > 0 ? std::min(forced_m, points.d)
                                     : jl_dimension(points.n, points.d, spec);
  out.m = m;
  out.rows.assign(points.n * m, 0.0);

  // One projection per sketched set, drawn row-major from the seed.
  std::vector<double> projection(m * points.d);
  Xoshiro256pp rng(spec.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  if (spec.kind == SketchKind::kGaussian) {
    for (double& entry : projection) entry = normal_unit(rng) * scale;
  } else {
    for (double& entry : projection) {
      entry = (rng() >> 63) ? scale : -scale;
    }
  }

  const std::size_t d = points.d;
  parallel_for(points.n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double* x = points.row_data(i);
      double* y = out.rows.data() + i * m;
      for (std::size_t r = 0; r < m; ++r) {
        const double* pr = projection.data() + r * d;
        double acc = 0.0;
        for (std::size_t t = 0; t < d; ++t) acc += pr[t] * x[t];
        y[r] = acc;
      }
    }
  });
  return out;
}

double sketch_sq_dist(const SketchedSet& sketched, std::size_t i,
                      std::size_t j) {
  if (i >= sketched.n || j >= sketched.n) {
    throw std::out_of_range("sketch index out of range");
  }
  return sq_dist(sketched.row_data(i), sketched.row_data(j), sketched.m);
}

}  // namespace sketchseed

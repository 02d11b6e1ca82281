#include "sketchseed/point_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sketchseed/numeric.hpp"
#include "sketchseed/rng.hpp"

namespace sketchseed {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

PointSet::PointSet(std::size_t n_points, std::size_t dim)
    : n(n_points), d(dim), coords(n_points * dim, 0.0) {
  require(n >= 1 && d >= 1, "point set requires n >= 1 and d >= 1");
}

PointSet PointSet::from_coords(std::size_t n_points, std::size_t dim,
                               std::vector<double> data) {
  require(n_points >= 1 && dim >= 1, "point set requires n >= 1 and d >= 1");
  require(data.size() == n_points * dim, "coordinate count mismatch");
  for (double v : data) {
    require(std::isfinite(v), "non-finite coordinate");
  }
  PointSet p;
  p.n = n_points;
  p.d = dim;
  p.coords = std::move(data);
  return p;
}

CenterSelection::CenterSelection(std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    for (std::size_t j = i + 1; j < indices_.size(); ++j) {
      require(indices_[i] != indices_[j], "duplicate center");
    }
  }
}

void CenterSelection::add(std::size_t index) {
  require(!contains(index), "duplicate center");
  indices_.push_back(index);
}

void CenterSelection::replace(std::size_t old_index, std::size_t new_index) {
  auto it = std::find(indices_.begin(), indices_.end(), old_index);
  require(it != indices_.end(), "not a center");
  if (old_index == new_index) return;
  require(!contains(new_index), "duplicate center");
  *it = new_index;
}

bool CenterSelection::contains(std::size_t index) const {
  return std::find(indices_.begin(), indices_.end(), index) != indices_.end();
}

std::vector<std::size_t> CenterSelection::sorted() const {
  std::vector<std::size_t> out(indices_.begin(), indices_.end());
  std::sort(out.begin(), out.end());
  return out;
}

void CenterSelection::validate_range(std::size_t n) const {
  for (std::size_t index : indices_) {
    require(index < n, "center index out of range");
  }
}

double exact_cost(const PointSet& points, const CenterSelection& centers) {
  require(!centers.empty(), "no centers");
  centers.validate_range(points.n);
  const auto idx = centers.indices();
  return pairwise_transform_sum(std::size_t{0}, points.n, [&](std::size_t i) {
    const double* xi = points.row_data(i);
    double best = sq_dist(xi, points.row_data(idx[0]), points.d);
    for (std::size_t c = 1; c < idx.size(); ++c) {
      const double dd = sq_dist(xi, points.row_data(idx[c]), points.d);
      if (dd < best) best = dd;
    }
    return best;
  });
}

double cost_to_points(const PointSet& points, const PointSet& centers) {
  require(centers.n >= 1, "no centers");
  require(centers.d == points.d, "center dimensionality mismatch");
  return pairwise_transform_sum(std::size_t{0}, points.n, [&](std::size_t i) {
    const double* xi = points.row_data(i);
    double best = sq_dist(xi, centers.row_data(0), points.d);
    for (std::size_t c = 1; c < centers.n; ++c) {
      const double dd = sq_dist(xi, centers.row_data(c), points.d);
      if (dd < best) best = dd;
    }
    return best;
  });
}

std::vector<double> subset_mean(const PointSet& points,
                                std::span<const std::size_t> subset) {
  require(!subset.empty(), "empty subset");
  for (std::size_t index : subset) {
    require(index < points.n, "subset index out of range");
  }
  std::vector<double> mean(points.d, 0.0);
  for (std::size_t t = 0; t < points.d; ++t) {
    const double total = pairwise_transform_sum(
        std::size_t{0}, subset.size(),
        [&](std::size_t s) { return points.row_data(subset[s])[t]; });
    mean[t] = total / static_cast<double>(subset.size());
  }
  return mean;
}

double cost_decomposition_residual(const PointSet& points,
                                   std::span<const std::size_t> subset,
                                   std::span<const double> center) {
  require(center.size() == points.d, "center dimensionality mismatch");
  const std::vector<double> mu = subset_mean(points, subset);
  const double lhs =
      pairwise_transform_sum(std::size_t{0}, subset.size(), [&](std::size_t s) {
        return sq_dist(points.row_data(subset[s]), center.data(), points.d);
      });
  const double spread =
      pairwise_transform_sum(std::size_t{0}, subset.size(), [&](std::size_t s) {
        return sq_dist(points.row_data(subset[s]), mu.data(), points.d);
      });
  const double rhs = static_cast<double>(subset.size()) *
                         sq_dist(center.data(), mu.data(), points.d) +
                     spread;
  return std::abs(lhs - rhs);
}

namespace {

void validate_gen_spec(const GenSpec& spec) {
  require(spec.n >= 1 && spec.d >= 1, "generation requires n >= 1 and d >= 1");
  if (spec.distribution == Distribution::kGaussianMixture) {
    require(spec.mixture.components >= 1, "mixture needs at least 1 component");
    require(spec.mixture.components <= spec.d,
            "mixture components must not exceed d (axis-aligned means)");
    require(spec.mixture.sigma > 0.0, "mixture sigma must be positive");
    require(spec.mixture.separation >= 0.0, "mixture separation must be >= 0");
  }
}

PointSet generate_unit_sphere(const GenSpec& spec) {
  PointSet points(spec.n, spec.d);
  Xoshiro256pp rng(spec.seed);
  for (std::size_t i = 0; i < spec.n; ++i) {
    double* row = points.row_data(i);
    double norm_sq = 0.0;
    do {
      for (std::size_t t = 0; t < spec.d; ++t) {
        row[t] = uniform_range(rng, -1.0, 1.0);
      }
      norm_sq = pairwise_transform_sum(
          std::size_t{0}, spec.d, [&](std::size_t t) { return row[t] * row[t]; });
    } while (norm_sq == 0.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (std::size_t t = 0; t < spec.d; ++t) row[t] *= inv;
  }
  return points;
}

PointSet generate_mixture(const GenSpec& spec) {
  const PointSet means = mixture_centers(spec);
  PointSet points(spec.n, spec.d);
  Xoshiro256pp rng(spec.seed);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double* mean = means.row_data(i % spec.mixture.components);
    double* row = points.row_data(i);
    for (std::size_t t = 0; t < spec.d; ++t) {
      row[t] = mean[t] + spec.mixture.sigma * normal_unit(rng);
    }
  }
  return points;
}

}  // namespace

PointSet generate(const GenSpec& spec) {
  validate_gen_spec(spec);
  if (spec.distribution == Distribution::kUnitSphere) {
    return generate_unit_sphere(spec);
  }
  return generate_mixture(spec);
}

PointSet mixture_centers(const GenSpec& spec) {
  require(spec.distribution == Distribution::kGaussianMixture,
          "mixture_centers requires a gaussian-mixture spec");
  validate_gen_spec(spec);
  PointSet means(spec.mixture.components, spec.d);
  for (std::size_t j = 0; j < spec.mixture.components; ++j) {
    means.row_data(j)[j] = spec.mixture.separation * spec.mixture.sigma;
  }
  return means;
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& what) {
  std::ostringstream msg;
  msg << path << ": line " << line << ": " << what;
  throw std::runtime_error(msg.str());
}

double parse_value(const std::string& path, std::size_t line,
                   std::string_view token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    parse_fail(path, line, "malformed number '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    parse_fail(path, line, "non-finite value '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

void save_points(const PointSet& points, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << points.n << ' ' << points.d << '\n';
  char buf[64];
  for (std::size_t i = 0; i < points.n; ++i) {
    const double* row = points.row_data(i);
    for (std::size_t t = 0; t < points.d; ++t) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, row[t]);
      (void)ec;
      if (t > 0) out.put(',');
      out.write(buf, ptr - buf);
    }
    out.put('\n');
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

PointSet load_points(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) parse_fail(path, line_no, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::size_t n = 0, d = 0;
  {
    const char* begin = line.data();
    const char* end = begin + line.size();
    auto r1 = std::from_chars(begin, end, n);
    if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ' ') {
      parse_fail(path, line_no, "expected header 'n d'");
    }
    auto r2 = std::from_chars(r1.ptr + 1, end, d);
    if (r2.ec != std::errc{} || r2.ptr != end) {
      parse_fail(path, line_no, "expected header 'n d'");
    }
  }
  if (n < 1 || d < 1) parse_fail(path, line_no, "header requires n >= 1 and d >= 1");

  std::vector<double> coords;
  coords.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    ++line_no;
    if (!std::getline(in, line)) {
      parse_fail(path, line_no, "unexpected end of file (expected " +
                                    std::to_string(n) + " rows)");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string_view> tokens;
    std::size_t start = 0;
    const std::string_view view(line);
    while (true) {
      const std::size_t comma = view.find(',', start);
      if (comma == std::string_view::npos) {
        tokens.push_back(view.substr(start));
        break;
      }
      tokens.push_back(view.substr(start, comma - start));
      start = comma + 1;
    }
    if (tokens.size() != d) {
      parse_fail(path, line_no,
                 "expected " + std::to_string(d) + " values, got " +
                     std::to_string(tokens.size()));
    }
    for (const std::string_view token : tokens) {
      coords.push_back(parse_value(path, line_no, token));
    }
  }
  ++line_no;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) parse_fail(path, line_no, "unexpected trailing content");
    ++line_no;
  }
  return PointSet::from_coords(n, d, std::move(coords));
}

}  // namespace sketchseed

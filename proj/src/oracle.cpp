#include "jamplace/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "jamplace/kernels.hpp"

namespace jamplace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

kernels::TargetBlock make_block(const Scenario& s, bool respect_epsilon) {
  kernels::TargetBlock b;
  const auto& jp = s.jamming();
  for (const auto& p : s.profiles()) {
    b.x.push_back(p.position.x);
    b.y.push_back(p.position.y);
    b.coef.push_back(p.r * p.k * jp.pj_watts);
    b.level.push_back(p.r * jp.noise_floor());
  }
  b.nu = jp.nu;
  b.nu_int = kernels::integral_exponent(jp.nu);
  // same boundary rule as Scenario::feasible
  const double e = std::max(jp.epsilon - kGeoTol, 0.0);
  b.eps_sq = e * e;
  b.respect_epsilon = respect_epsilon;
  return b;
}

// Evaluates one grid row. Ungated scenarios go through the vector kernels;
// gated ones need the piecewise profiles and stay scalar.
class RowEvaluator {
 public:
  RowEvaluator(const Scenario& s, bool respect_epsilon)
      : s_(s), block_(make_block(s, respect_epsilon)), isa_(kernels::active()) {}

  void operator()(double y, double x0, double h, std::size_t n, double* out) const {
    if (!s_.gated()) {
      kernels::min_crlb_row(isa_, block_, y, x0, h, n, out);
      return;
    }
    const std::size_t nt = s_.target_count();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = x0 + static_cast<double>(i) * h;
      double m = kInf;
      bool masked = false;
      for (std::size_t t = 0; t < nt; ++t) {
        const double dx = x - block_.x[t];
        const double dy = y - block_.y[t];
        const double d2 = dx * dx + dy * dy;
        masked |= block_.respect_epsilon && d2 < block_.eps_sq;
        const double v = s_.crlb_at_distance(t, std::sqrt(d2));
        m = v < m ? v : m;
      }
      out[i] = masked ? -kInf : m;
    }
  }

  double at(Point2 z) const {
    double v;
    (*this)(z.y, z.x, 0.0, 1, &v);
    return v;
  }

 private:
  const Scenario& s_;
  kernels::TargetBlock block_;
  kernels::Isa isa_;
};

struct RowBest {
  double value = -kInf;
  std::size_t ix = 0;
};

// Row-parallel sweep over a grid; `sink(iy, row)` sees each evaluated row.
template <class Sink>
void for_each_row(const RowEvaluator& eval, const Box& box, double h, std::size_t nx, std::size_t ny, Sink&& sink) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, std::max<std::size_t>(1, ny / 64));
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> row(nx);
    for (std::size_t iy = begin; iy < end; ++iy) {
      eval(box.y_min + static_cast<double>(iy) * h, box.x_min, h, nx, row.data());
      sink(iy, row);
    }
  };
  if (workers <= 1) {
    work(0, ny);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (ny + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(ny, begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
  for (auto& t : pool) t.join();
}

void check_spec(const GridSpec& spec) {
  if (!(spec.resolution > 0.0)) throw std::invalid_argument("grid resolution must be > 0");
  const Box& b = spec.bounds;
  if (!(b.x_max > b.x_min) || !(b.y_max > b.y_min)) throw std::invalid_argument("grid box is degenerate");
}

PlacementResult make_result(const Scenario& s, Point2 z, double value) {
  PlacementResult r;
  r.z = z;
  r.value = value;
  r.active_targets = targets_at_level(s, z, value);
  if (r.active_targets.empty()) r.active_targets = min_crlb(s, z).argmin_ids;
  r.branch = Branch::GridFallback;
  r.feasible = s.feasible(z);
  return r;
}

}  // namespace

Box default_search_box(const Scenario& s) {
  Box b{kInf, -kInf, kInf, -kInf};
  for (const auto& p : s.profiles()) {
    b.x_min = std::min(b.x_min, p.position.x);
    b.x_max = std::max(b.x_max, p.position.x);
    b.y_min = std::min(b.y_min, p.position.y);
    b.y_max = std::max(b.y_max, p.position.y);
  }
  const double pad = std::max(2.0 * s.jamming().epsilon, 2.0);
  return {b.x_min - pad, b.x_max + pad, b.y_min - pad, b.y_max + pad};
}

std::size_t grid_count(double length, double h) {
  return static_cast<std::size_t>(std::floor(length / h + 1e-9)) + 1;
}

double lipschitz_bound(const Scenario& s, const Box& box) {
  const auto& jp = s.jamming();
  double bound = 0.0;
  for (std::size_t i = 0; i < s.target_count(); ++i) {
    const Point2 x = s.position(i);
    const double dx = std::max({box.x_min - x.x, 0.0, x.x - box.x_max});
    const double dy = std::max({box.y_min - x.y, 0.0, x.y - box.y_max});
    const double dmin = std::max(jp.epsilon, std::hypot(dx, dy));
    double r = 0.0;
    for (double f : s.distance_profile(i).factors())
      if (!is_unbounded(f)) r = std::max(r, f);
    bound = std::max(bound, r * s.profile(i).k * jp.pj_watts * jp.nu / std::pow(dmin, jp.nu + 1.0));
  }
  return bound;
}

Point2 FieldMap::node(std::size_t ix, std::size_t iy) const {
  return {bounds.x_min + static_cast<double>(ix) * resolution, bounds.y_min + static_cast<double>(iy) * resolution};
}

FieldMap field_map(const Scenario& s, const GridSpec& spec) {
  check_spec(spec);
  FieldMap f;
  f.bounds = spec.bounds;
  f.resolution = spec.resolution;
  f.nx = grid_count(spec.bounds.x_max - spec.bounds.x_min, spec.resolution);
  f.ny = grid_count(spec.bounds.y_max - spec.bounds.y_min, spec.resolution);
  f.values.assign(f.nx * f.ny, -kInf);
  const RowEvaluator eval(s, spec.respect_epsilon);
  for_each_row(eval, spec.bounds, spec.resolution, f.nx, f.ny, [&](std::size_t iy, const std::vector<double>& row) {
    std::copy(row.begin(), row.end(), f.values.begin() + static_cast<std::ptrdiff_t>(iy * f.nx));
  });
  return f;
}

PlacementResult grid_search(const Scenario& s, const GridSpec& spec) {
  check_spec(spec);
  const std::size_t nx = grid_count(spec.bounds.x_max - spec.bounds.x_min, spec.resolution);
  const std::size_t ny = grid_count(spec.bounds.y_max - spec.bounds.y_min, spec.resolution);
  std::vector<RowBest> rows(ny);
  const RowEvaluator eval(s, spec.respect_epsilon);
  for_each_row(eval, spec.bounds, spec.resolution, nx, ny, [&](std::size_t iy, const std::vector<double>& row) {
    RowBest b;
    for (std::size_t ix = 0; ix < nx; ++ix)
      if (row[ix] > b.value) b = {row[ix], ix};
    rows[iy] = b;
  });

  double best = -kInf;
  std::size_t bx = 0;
  std::size_t by = 0;
  for (std::size_t iy = 0; iy < ny; ++iy)
    if (rows[iy].value > best) {
      best = rows[iy].value;
      bx = rows[iy].ix;
      by = iy;
    }
  if (best == -kInf) throw NoFeasiblePoint("no feasible grid point in the search box");
  const Point2 z{spec.bounds.x_min + static_cast<double>(bx) * spec.resolution,
                 spec.bounds.y_min + static_cast<double>(by) * spec.resolution};
  return make_result(s, z, best);
}

PlacementResult refine(const Scenario& s, Point2 z0, int rounds, double factor, double h0, bool respect_epsilon) {
  if (!(factor > 1.0)) throw std::invalid_argument("refine: factor must be > 1");
  const RowEvaluator eval(s, respect_epsilon);
  Point2 z = z0;
  double v = eval.at(z0);

  double coarse = h0;
  for (int r = 0; r < rounds; ++r) {
    const double h = coarse / factor;
    const double half = 2.0 * coarse;
    const std::size_t n = grid_count(2.0 * half, h);
    std::vector<double> row(n);
    // Re-centre until the incumbent stops moving, so ridges can be followed.
    for (int pass = 0; pass < 64; ++pass) {
      const Point2 origin{z.x - half, z.y - half};
      Point2 best_z = z;
      double best_v = v;
      for (std::size_t iy = 0; iy < n; ++iy) {
        const double y = origin.y + static_cast<double>(iy) * h;
        eval(y, origin.x, h, n, row.data());
        for (std::size_t ix = 0; ix < n; ++ix)
          if (row[ix] > best_v) {
            best_v = row[ix];
            best_z = {origin.x + static_cast<double>(ix) * h, y};
          }
      }
      if (!(best_v > v)) break;
      z = best_z;
      v = best_v;
    }
    coarse = h;
  }
  if (v == -kInf) return make_result(s, z, min_crlb(s, z).value);
  return make_result(s, z, v);
}

}  // namespace jamplace

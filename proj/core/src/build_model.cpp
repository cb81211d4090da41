#include <algorithm>
#include <cmath>
#include <numeric>

#include "rdf/error.hpp"
#include "rdf/witness.hpp"

namespace rdf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Union-find over function names, one instance per segment or tail.
class Classes {
 public:
  explicit Classes(const std::vector<std::string>& fs) {
    for (const auto& f : fs) parent_[f] = f;
  }
  std::string find(const std::string& f) {
    std::string r = f;
    while (parent_[r] != r) r = parent_[r];
    parent_[f] = r;
    return r;
  }
  void unite(const std::string& a, const std::string& b) {
    std::string x = find(a), y = find(b);
    if (x == y) return;
    // Smallest name represents the class, keeping fits deterministic.
    if (y < x) std::swap(x, y);
    parent_[y] = x;
  }

 private:
  std::map<std::string, std::string> parent_;
};

struct FunctionData {
  std::vector<double> y, t;
  double gamma_left = 0, gamma_right = 0;
};

// Requirements and equality classes for the segments and both tails.
struct Layout {
  std::size_t segments = 0;
  std::map<std::string, std::vector<ShapeRequirements>> seg;  // f -> per segment
  std::map<std::string, ShapeRequirements> left, right;
  std::vector<Classes> seg_classes;
  Classes left_classes, right_classes;
  std::map<std::string, std::vector<bool>> compared;  // f -> segment under fun_gt
  double min_gap = kInf;

  explicit Layout(const std::vector<std::string>& fs, std::size_t r)
      : segments(r - 1), seg_classes(r - 1, Classes(fs)), left_classes(fs), right_classes(fs) {
    for (const auto& f : fs) {
      seg[f].resize(segments);
      compared[f].assign(segments, false);
    }
  }

  template <typename Fn>
  void over(const std::string& f, const Coverage& c, Fn&& fn) {
    for (std::size_t j = c.first; j < c.last; ++j) fn(seg[f][j]);
    if (c.left_tail) fn(left[f]);
    if (c.right_tail) fn(right[f]);
  }
};

ShapeRequirements shape_requirement(ShapeKind kind) {
  ShapeRequirements r;
  switch (kind) {
    case ShapeKind::Up: r.bounds.push_back({0.0, true, false}); break;
    case ShapeKind::Down: r.bounds.push_back({0.0, false, false}); break;
    case ShapeKind::StrictUp: r.strict_up = true; break;
    case ShapeKind::StrictDown: r.strict_down = true; break;
    case ShapeKind::Convex: r.convex = true; break;
    case ShapeKind::StrictConvex: r.strict_convex = true; break;
    case ShapeKind::Concave: r.concave = true; break;
    case ShapeKind::StrictConcave: r.strict_concave = true; break;
  }
  return r;
}

ShapeRequirements der_requirement(DerRel rel, double bound) {
  ShapeRequirements r;
  switch (rel) {
    case DerRel::Eq:
      r.bounds.push_back({bound, true, false});
      r.bounds.push_back({bound, false, false});
      break;
    case DerRel::Gt: r.bounds.push_back({bound, true, true}); break;
    case DerRel::Ge: r.bounds.push_back({bound, true, false}); break;
    case DerRel::Lt: r.bounds.push_back({bound, false, true}); break;
    case DerRel::Le: r.bounds.push_back({bound, false, false}); break;
  }
  return r;
}

double lookup(const std::map<std::string, Rational>& m, const std::string& v, double fallback) {
  auto it = m.find(v);
  return it == m.end() ? fallback : to_double(it->second);
}

}  // namespace

ExplicitModel build_model(const Reduction& red, const std::map<std::string, Rational>& witness,
                          const BuildOptions& options) {
  const ReductionContext& ctx = red.context;
  ExplicitModel model;

  // Numeric part: the witness verbatim, merged variables via their
  // representative, everything else unconstrained (0).
  model.numeric = witness;
  for (const auto& v : red.evaluated.numeric_vars()) model.numeric.emplace(v, Rational(0));
  for (const auto& v : ctx.chain) model.numeric.emplace(v, Rational(0));
  for (const auto& [v, rep] : red.ordered.merged) model.numeric[v] = model.numeric.at(rep);
  for (const auto& v : red.positive.numeric_vars()) model.numeric.emplace(v, Rational(0));

  if (ctx.functions.empty()) return model;
  const std::size_t r = ctx.size();
  if (r == 0) throw ModelConstructionFailure("functions without a domain chain");

  std::vector<double> xs;
  for (const auto& v : ctx.chain) xs.push_back(to_double(model.numeric.at(v)));
  for (std::size_t j = 0; j + 1 < r; ++j) {
    if (!(xs[j] < xs[j + 1])) throw ModelConstructionFailure("domain chain values are not increasing");
  }

  std::map<std::string, FunctionData> data;
  for (const auto& f : ctx.functions) {
    FunctionData& d = data[f];
    for (std::size_t j = 0; j < r; ++j) {
      d.y.push_back(lookup(witness, ctx.y.at(f)[j], 0.0));
      d.t.push_back(lookup(witness, ctx.t.at(f)[j], 0.0));
    }
    d.gamma_left = lookup(witness, ctx.gamma_left.at(f), d.t.front());
    d.gamma_right = lookup(witness, ctx.gamma_right.at(f), d.t.back());
  }

  Layout layout(ctx.functions, r);
  std::vector<const Literal*> comparisons;
  for (const auto& l : red.evaluated.literals()) {
    if (!l.is_functional()) continue;
    if (l.negated) throw ModelConstructionFailure("negated literal after step 1: " + to_string(l));
    Coverage c = coverage(l, ctx);
    if (c.vacuous) continue;
    switch (l.kind) {
      case LitKind::DerRel: {
        ShapeRequirements req = der_requirement(l.rel, to_double(model.numeric.at(l.y)));
        layout.over(l.f, c, [&](ShapeRequirements& s) { s.merge(req); });
        break;
      }
      case LitKind::Shape: {
        ShapeRequirements req = shape_requirement(l.shape);
        layout.over(l.f, c, [&](ShapeRequirements& s) { s.merge(req); });
        break;
      }
      case LitKind::FunEq:
        for (std::size_t j = c.first; j < c.last; ++j) layout.seg_classes[j].unite(l.f, l.g);
        if (c.left_tail) layout.left_classes.unite(l.f, l.g);
        if (c.right_tail) layout.right_classes.unite(l.f, l.g);
        break;
      case LitKind::FunGt:
        comparisons.push_back(&l);
        for (std::size_t i = c.first; i <= c.last; ++i)
          layout.min_gap = std::min(layout.min_gap, data[l.f].y[i] - data[l.g].y[i]);
        for (std::size_t j = c.first; j < c.last; ++j) {
          layout.compared[l.f][j] = true;
          layout.compared[l.g][j] = true;
        }
        break;
      default: break;
    }
  }

  // Requirements merged over each equality class.
  auto class_req = [&](Classes& cls, auto&& get, const std::string& f) {
    ShapeRequirements out;
    std::string root = cls.find(f);
    for (const auto& g : ctx.functions)
      if (cls.find(g) == root) out.merge(get(g));
    return out;
  };

  double envelope = std::isinf(layout.min_gap) ? kInf : layout.min_gap / 3;
  std::size_t attempts = comparisons.empty() ? 1 : options.envelope_retries;
  std::string failure;
  for (std::size_t attempt = 0; attempt < attempts; ++attempt, envelope /= 2) {
    try {
      std::map<std::string, PiecewiseModel> fns;
      std::map<std::string, std::vector<Piece>> pieces;
      for (const auto& f : ctx.functions) pieces[f].resize(r + 1);

      for (const auto& f : ctx.functions) {
        // Left tail.
        std::string root = layout.left_classes.find(f);
        if (root == f) {
          auto req = class_req(layout.left_classes, [&](const std::string& g) { return layout.left[g]; }, f);
          const auto& d = data[f];
          pieces[f][0] = fit_tail(Side::Left, xs.front(), d.y.front(), d.t.front(), d.gamma_left, req);
        }
        root = layout.right_classes.find(f);
        if (root == f) {
          auto req = class_req(layout.right_classes, [&](const std::string& g) { return layout.right[g]; }, f);
          const auto& d = data[f];
          pieces[f][r] = fit_tail(Side::Right, xs.back(), d.y.back(), d.t.back(), d.gamma_right, req);
        }
        for (std::size_t j = 0; j + 1 < r; ++j) {
          if (layout.seg_classes[j].find(f) != f) continue;
          auto req = class_req(layout.seg_classes[j], [&](const std::string& g) {
            ShapeRequirements s = layout.seg[g][j];
            if (layout.compared[g][j]) s.envelope = envelope;
            return s;
          }, f);
          const auto& d = data[f];
          pieces[f][j + 1] = fit_segment(xs[j], xs[j + 1], d.y[j], d.y[j + 1], d.t[j], d.t[j + 1], req);
        }
      }
      // Class members share the representative's pieces.
      for (const auto& f : ctx.functions) {
        pieces[f][0] = pieces[layout.left_classes.find(f)][0];
        pieces[f][r] = pieces[layout.right_classes.find(f)][r];
        for (std::size_t j = 0; j + 1 < r; ++j) pieces[f][j + 1] = pieces[layout.seg_classes[j].find(f)][j + 1];
        fns.emplace(f, PiecewiseModel(xs, pieces[f]));
      }

      // Dominance on dense samples.
      bool dominated = true;
      for (const Literal* l : comparisons) {
        Coverage c = coverage(*l, ctx);
        double a = xs[c.first], b = xs[c.last];
        const auto& f = fns.at(l->f);
        const auto& g = fns.at(l->g);
        for (std::size_t i = 0; i < options.samples && dominated; ++i) {
          double x = options.samples == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(options.samples - 1);
          dominated = f.value(x) - g.value(x) > 0;
        }
      }
      if (!dominated) {
        failure = "sampled dominance fails";
        continue;
      }
      model.functional = std::move(fns);
      return model;
    } catch (const InfeasibleSegment& e) {
      failure = e.what();
    } catch (const InfeasibleTail& e) {
      failure = e.what();
      break;
    }
  }
  throw ModelConstructionFailure("model construction failed: " + failure);
}

}  // namespace rdf

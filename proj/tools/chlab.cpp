#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chlab/chlab.hpp"
#include "cli_input.hpp"

using nlohmann::json;
using namespace chlab;

namespace {

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json mj(const CMat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json r = json::array();
    for (int k = 0; k < 3; ++k) r.push_back(cj(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

json pj(const AnglePair& p) { return json::array({p.a1, p.a2}); }

json vj(const CVec3& v) { return json::array({cj(v[0]), cj(v[1]), cj(v[2])}); }

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + out + "' for writing");
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "write to '" + out + "' failed");
}

void emit_json(const json& j, const std::string& out) { emit_text(j.dump(2) + "\n", out); }

struct Options {
  std::string input;
  std::string classes;
  std::string preset;
  std::string types = "---";
  std::vector<std::string> theta;
  std::vector<std::string> alpha;
  std::string point;
  int grid = 0;
  std::string out;
  std::string format = "json";
  double tol = 1e-8;
};

struct ClassSource {
  std::string id = "custom";
  std::vector<AnglePair> classes;
  std::optional<PQRSignature> signature;
};

ClassSource class_source(const Options& o, std::size_t want) {
  ClassSource s;
  if (!o.preset.empty() && !o.classes.empty())
    throw Error(ErrorCode::ParseError, "give either --classes or --preset, not both");
  if (!o.preset.empty()) {
    const auto p = cli::parse_preset(o.preset);
    s.id = p.id;
    s.classes.assign(p.classes.begin(), p.classes.end());
    s.signature = p.signature;
  } else if (!o.classes.empty()) {
    s.classes = cli::parse_classes(o.classes);
  } else {
    throw Error(ErrorCode::ParseError, "missing --classes or --preset");
  }
  if (want && s.classes.size() != want)
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(want) + " classes, got " +
                                           std::to_string(s.classes.size()));
  return s;
}

TypeVector parse_types(const std::string& text) {
  TypeVector t{};
  std::size_t k = 0;
  for (char ch : text) {
    if (ch == ' ' || ch == ',') continue;
    if (k == 3) throw Error(ErrorCode::ParseError, "type vector has more than three entries: '" + text + "'");
    if (ch == '-')
      t[k++] = PointType::Negative;
    else if (ch == '+')
      t[k++] = PointType::Positive;
    else
      throw Error(ErrorCode::ParseError, "type vector entries are '+' or '-': '" + text + "'");
  }
  if (k != 3) throw Error(ErrorCode::ParseError, "type vector needs three entries: '" + text + "'");
  return t;
}

double single_angle(const std::vector<std::string>& v, const char* name) {
  if (v.size() != 1) throw Error(ErrorCode::ParseError, std::string("exactly one --") + name + " is required");
  return cli::parse_angle(v[0]).wrapped();
}

json chart_json(const ComponentChart& ch) {
  json d = json::array();
  for (const auto& iv : ch.domain) d.push_back(json::array({iv.lo, iv.hi}));
  json tr = json::array();
  for (auto t : ch.traces) tr.push_back(cj(t));
  return {{"beta", ch.beta}, {"gamma", ch.gamma}, {"domain", d}, {"traces", tr}};
}

// Centre of the largest sub-interval of the domain where I(theta) is non-empty.
double interior_theta(const ComponentChart& ch) {
  double best = ch.domain.front().lo + 0.5 * (ch.domain.front().hi - ch.domain.front().lo);
  double best_len = -1.0;
  for (const auto& iv : ch.domain) {
    const int n = 512;
    int run_start = -1;
    for (int i = 1; i <= n; ++i) {
      const double t = iv.lo + (iv.hi - iv.lo) * i / n;
      const bool ok = i < n && !ch.alpha_interval(t).empty;
      if (ok && run_start < 0) run_start = i;
      if (!ok && run_start >= 0) {
        const double a = iv.lo + (iv.hi - iv.lo) * run_start / n, b = iv.lo + (iv.hi - iv.lo) * (i - 1) / n;
        if (b - a > best_len) {
          best_len = b - a;
          best = 0.5 * (a + b);
        }
        run_start = -1;
      }
    }
  }
  return best;
}

int cmd_classify(const Options& o) {
  if (o.input.empty()) throw Error(ErrorCode::ParseError, "classify needs an input element");
  const SU21Element g = cli::parse_element(o.input);
  const cplx tr = g.trace();
  const IsometryClass c = classify(g);
  json j{{"class", std::string(to_string(c))},
         {"trace", cj(tr)},
         {"discriminant", goldman_discriminant(tr)},
         {"matrix", mj(g.matrix())}};
  if (is_elliptic(c)) j["angle_pair"] = pj(angle_pair(g));
  emit_json(j, o.out);
  return 0;
}

int cmd_decompose(const Options& o) {
  const ClassSource src = class_source(o, 3);
  const TypeVector types = parse_types(o.types);
  if (types != kSphericalTypes)
    throw Error(ErrorCode::TypeUnavailable, "class-level decomposition is available for spherical types only");
  const auto& c = src.classes;
  const std::array<cplx, 3> lam{principal_negative_eigenvalue(c[0]), principal_negative_eigenvalue(c[1]),
                                principal_negative_eigenvalue(c[2])};
  const double res = cube_residual(lam);
  const bool dec = res <= tol::dec;
  json classes = json::array();
  for (const auto& p : c) classes.push_back(pj(p));
  json j{{"id", src.id},
         {"classes", classes},
         {"types", o.types},
         {"lambdas", json::array({cj(lam[0]), cj(lam[1]), cj(lam[2])})},
         {"lambda_product", cj(lam[0] * lam[1] * lam[2])},
         {"cube_residual", res},
         {"decomposable", dec}};
  if (dec) {
    try {
      const ComponentChart ch = component_chart(c[0], c[1], c[2]);
      j["chart"] = chart_json(ch);
      if (!o.out.empty()) {
        const double th = interior_theta(ch);
        const ChartSample s = chart_sample(ch, th, ch.alpha_interval(th).mid());
        json m{{"theta", th},
               {"alpha", s.alpha},
               {"A", mj(s.triple.A.matrix())},
               {"B", mj(s.triple.B.matrix())},
               {"C", mj(s.triple.C.matrix())}};
        json refl = json::array();
        for (int k = 0; k < 3; ++k)
          refl.push_back({{"polar", vj(s.decomposition.R[k].polar)}, {"eta", cj(s.decomposition.R[k].eta)}});
        m["reflections"] = refl;
        emit_json(m, o.out);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyDomain) throw;
      j["chart"] = {{"domain", json::array()}, {"note", e.what()}};
    }
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_chart(const Options& o) {
  const ClassSource src = class_source(o, 3);
  const auto& c = src.classes;
  const ComponentChart ch = component_chart(c[0], c[1], c[2]);
  if (o.format == "json") {
    json j = chart_json(ch);
    j["id"] = src.id;
    emit_json(j, o.out);
    return 0;
  }
  if (o.format != "csv") throw Error(ErrorCode::ParseError, "chart supports json and csv output");
  const int n = o.grid > 0 ? o.grid : 256;
  emit::Csv csv({"theta", "sin2phi1", "sin2phi2", "sin2phi3", "alpha_lo", "alpha_hi", "alpha_whole", "chart_id"});
  for (const auto& iv : ch.domain)
    for (int i = 1; i < n; ++i) {
      const double t = iv.lo + (iv.hi - iv.lo) * i / n;
      const auto s = ch.sin2phi(t);
      const AlphaInterval ai = ch.alpha_interval(t);
      if (ai.empty) continue;
      csv.row(t, s[0], s[1], s[2], ai.lo, ai.hi, ai.whole ? 1 : 0, src.id);
    }
  emit_text(csv.str(), o.out);
  return 0;
}

int cmd_sample(const Options& o) {
  const ClassSource src = class_source(o, 3);
  const auto& c = src.classes;
  const ComponentChart ch = component_chart(c[0], c[1], c[2]);
  const double th = single_angle(o.theta, "theta");
  const double al = single_angle(o.alpha, "alpha");
  const ChartSample s = chart_sample(ch, th, al);
  const auto& t = s.triple;
  const CharacterPoint cp = character_point(t.A, t.B);
  json j{{"id", src.id},
         {"theta", th},
         {"alpha", al},
         {"phis", json::array({ch.phis(th)[0], ch.phis(th)[1], ch.phis(th)[2]})},
         {"A", mj(t.A.matrix())},
         {"B", mj(t.B.matrix())},
         {"C", mj(t.C.matrix())},
         {"traces", {{"A", cj(cp.tr_a)}, {"B", cj(cp.tr_b)}, {"C", cj(t.C.trace())}, {"AinvB", cj(cp.tr_ainv_b)},
                     {"commutator", cj(cp.tr_comm)}}},
         {"angle_pairs", json::array({pj(angle_pair(t.A)), pj(angle_pair(t.B)), pj(angle_pair(t.C))})}};
  const int limit = 4 * (src.signature ? std::max({src.signature->p, src.signature->q, src.signature->r}) : 60);
  j["projective_orders"] = json::array({projective_order(t.A.matrix(), limit, o.tol),
                                        projective_order(t.B.matrix(), limit, o.tol),
                                        projective_order(t.C.matrix(), limit, o.tol)});
  if (src.signature) j["relation_holds"] = relation_check(t, *src.signature, o.tol);
  emit_json(j, o.out);
  return 0;
}

int cmd_skeleton(const Options& o) {
  const ClassSource src = class_source(o, 2);
  const int res = o.grid > 0 ? o.grid : 256;
  const ReducibleSkeleton sk = reducible_skeleton(src.classes[0], src.classes[1], res);
  if (o.format == "csv") {
    emit_text(emit::skeleton_csv(sk), o.out);
  } else if (o.format == "svg") {
    emit_text(emit::skeleton_svg(sk), o.out);
  } else {
    json segs = json::array();
    auto seg = [](const SkeletonSegment& s) {
      return json{{"kind", s.kind == SkeletonSegment::Kind::Spherical ? "spherical" : "hyperbolic"},
                  {"slope", s.slope},
                  {"start", json::array({s.start[0], s.start[1]})},
                  {"end", json::array({s.end[0], s.end[1]})},
                  {"polylines", s.polylines.size()}};
    };
    segs.push_back(seg(sk.spherical));
    for (const auto& h : sk.hyperbolic) segs.push_back(seg(h));
    emit_json({{"vertices", json::array({pj(sk.vertices[0]), pj(sk.vertices[1])})}, {"segments", segs}}, o.out);
  }
  return 0;
}

int cmd_deltoid(const Options& o) {
  std::optional<cplx> point;
  if (!o.point.empty()) {
    const auto parts = cli::detail::split(o.point, ", ");
    double re = 0.0, im = 0.0;
    if (parts.size() != 2 || !cli::detail::parse_decimal(parts[0], re) || !cli::detail::parse_decimal(parts[1], im))
      throw Error(ErrorCode::ParseError, "--point expects 're,im'");
    point = cplx(re, im);
  }
  const int n = o.grid > 0 ? o.grid : 360;
  if (o.format == "csv") {
    emit_text(emit::deltoid_csv(n, point), o.out);
  } else if (o.format == "svg") {
    emit_text(emit::deltoid_svg(n, point), o.out);
  } else {
    json j{{"grid", n}};
    if (point) {
      const TangentTriple tt = tangents_through(*point);
      json lines = json::array();
      for (double t : tt.thetas) {
        const TangentLine tl(t);
        lines.push_back({{"theta", t}, {"foot", cj(tl.foot)}, {"direction", cj(tl.direction)}});
      }
      j["point"] = cj(*point);
      j["tangents"] = lines;
      j["near_degenerate"] = tt.near_degenerate;
    }
    emit_json(j, o.out);
  }
  return 0;
}

int cmd_trace_curve(const Options& o) {
  const ClassSource src = class_source(o, 3);
  const auto& c = src.classes;
  const ComponentChart ch = component_chart(c[0], c[1], c[2]);
  const int n = o.grid > 0 ? o.grid : 64;
  std::vector<emit::TraceCurve> curves;
  for (const auto& a : o.alpha) {
    const double al = cli::parse_angle(a).wrapped();
    curves.push_back({src.id, trace_curve(ch, FixedAlpha{al}, n)});
  }
  std::vector<double> thetas;
  for (const auto& t : o.theta) thetas.push_back(cli::parse_angle(t).wrapped());
  if (thetas.empty() && o.alpha.empty()) {
    // a default family of theta levels spread over the part of the domain with admissible alpha
    for (const auto& iv : ch.domain) {
      const int levels = 9;
      for (int i = 1; i < levels; ++i) {
        const double t = iv.lo + (iv.hi - iv.lo) * i / levels;
        if (!ch.alpha_interval(t).empty) thetas.push_back(t);
      }
    }
  }
  for (double t : thetas) curves.push_back({src.id, trace_curve(ch, FixedTheta{t}, n)});
  if (o.format == "csv") {
    emit_text(emit::trace_curves_csv(curves), o.out);
  } else if (o.format == "svg") {
    emit_text(emit::trace_curves_svg(curves), o.out);
  } else {
    json j = json::array();
    for (const auto& cv : curves) {
      json pts = json::array();
      for (const auto& p : cv.points) pts.push_back({p.theta, p.alpha, p.tr_ainv_b.real(), p.tr_ainv_b.imag()});
      j.push_back({{"chart_id", cv.chart_id}, {"points", pts}});
    }
    emit_json(j, o.out);
  }
  return 0;
}

int cmd_fiber_probe(const Options& o) {
  const ClassSource src = class_source(o, 3);
  const auto& c = src.classes;
  const AnglePair product = src.signature ? c[2].inverse() : c[2];
  const FiberReport r = fiber_probe(c[0], c[1], product, o.grid > 0 ? o.grid : 8);
  json j{{"membership", std::string(to_string(r.membership))},
         {"kind", std::string(to_string(r.kind))},
         {"samples", r.samples},
         {"decomposed", r.decomposed},
         {"boundary_samples", r.boundary_samples},
         {"boundary_trace_spread", r.boundary_trace_spread}};
  if (r.chart) j["chart"] = chart_json(*r.chart);
  emit_json(j, o.out);
  return 0;
}

json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex hyperbolic geometry toolkit: classification, decomposition, charts and figures"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output file (stdout when omitted)");
    sub->add_option("--tol", o.tol, "Tolerance for order and relation checks")->check(CLI::PositiveNumber);
  };
  auto add_classes = [&](CLI::App* sub) {
    sub->add_option("--classes", o.classes, "Angle pairs, e.g. '3pi/2,pi; 6pi/5,2pi/5; 8pi/5,3pi/10'");
    sub->add_option("--preset", o.preset, "rfuchsian:p,q,r or exotic:4,5,20");
  };
  auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(allowed));
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify an element given as 'E a1 a2' or a JSON 3x3 matrix");
  classify_cmd->add_option("input", o.input, "Element")->required();
  add_common(classify_cmd);

  auto* decompose_cmd = app.add_subcommand("decompose", "Decomposability of three elliptic classes");
  add_classes(decompose_cmd);
  decompose_cmd->add_option("--types", o.types, "Fixed point types, e.g. '---'");
  add_common(decompose_cmd);

  auto* chart_cmd = app.add_subcommand("chart", "Rotation-angle chart of a decomposable class triple");
  add_classes(chart_cmd);
  chart_cmd->add_option("--grid", o.grid, "Samples per domain interval")->check(CLI::Range(2, 1 << 20));
  add_format(chart_cmd, {"json", "csv"});
  add_common(chart_cmd);

  auto* sample_cmd = app.add_subcommand("sample", "Representation at a chart point");
  add_classes(sample_cmd);
  sample_cmd->add_option("--theta", o.theta, "Rotation angle of the first reflection");
  sample_cmd->add_option("--alpha", o.alpha, "Angular invariant of the mirror triangle");
  add_common(sample_cmd);

  auto* skeleton_cmd = app.add_subcommand("skeleton", "Reducible skeleton of a pair of classes");
  add_classes(skeleton_cmd);
  skeleton_cmd->add_option("--grid", o.grid, "Samples per segment")->check(CLI::Range(2, 1 << 20));
  add_format(skeleton_cmd, {"json", "csv", "svg"});
  add_common(skeleton_cmd);

  auto* deltoid_cmd = app.add_subcommand("deltoid", "Deltoid and tangent lines through a point");
  deltoid_cmd->add_option("--point", o.point, "Interior point 're,im'");
  deltoid_cmd->add_option("--grid", o.grid, "Boundary samples")->check(CLI::Range(3, 1 << 20));
  add_format(deltoid_cmd, {"json", "csv", "svg"});
  add_common(deltoid_cmd);

  auto* trace_cmd = app.add_subcommand("trace-curve", "Trace of A^-1 B along theta or alpha levels of a chart");
  add_classes(trace_cmd);
  trace_cmd->add_option("--theta", o.theta, "Theta levels (repeatable)");
  trace_cmd->add_option("--alpha", o.alpha, "Alpha levels (repeatable)");
  trace_cmd->add_option("--grid", o.grid, "Samples per curve")->check(CLI::Range(2, 1 << 20));
  add_format(trace_cmd, {"json", "csv", "svg"});
  add_common(trace_cmd);

  auto* fiber_cmd = app.add_subcommand("fiber-probe", "Pairs in (C1, C2) whose product lies in C3 (inverse of C for presets)");
  add_classes(fiber_cmd);
  fiber_cmd->add_option("--grid", o.grid, "Samples per chart direction")->check(CLI::Range(2, 4096));
  add_common(fiber_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << error_json("ParseError", e.what()).dump(2) << "\n";
    return 2;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(o);
    if (decompose_cmd->parsed()) return cmd_decompose(o);
    if (chart_cmd->parsed()) return cmd_chart(o);
    if (sample_cmd->parsed()) return cmd_sample(o);
    if (skeleton_cmd->parsed()) return cmd_skeleton(o);
    if (deltoid_cmd->parsed()) return cmd_deltoid(o);
    if (trace_cmd->parsed()) return cmd_trace_curve(o);
    if (fiber_cmd->parsed()) return cmd_fiber_probe(o);
  } catch (const Error& e) {
    std::cerr << error_json(std::string(to_string(e.code())), e.what()).dump(2) << "\n";
    return e.code() == ErrorCode::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << error_json("Internal", e.what()).dump(2) << "\n";
    return 1;
  }
  return 1;
}

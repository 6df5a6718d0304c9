#pragma once

#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conepos/c12.hpp"
#include "conepos/io.hpp"

namespace conepos::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kMalformed = 2, kExhausted = 3 };

using io::Json;
using io::to_json;

struct Options {
  std::vector<std::string> cones;
  std::string vector, floor, chain_file, points, mode = "via-zero", format = "json";
  std::size_t budget = 500;
  std::int64_t radius = 50;
  std::uint64_t seed = 0;
  std::size_t dim = 3, generators = 4;
  std::int64_t bound = 5;
};

struct Outcome {
  Json doc;
  std::string summary;
  int code = kOk;
};

namespace detail {

inline Json report_json(const SearchReport& r) {
  Json j{{"procedure", to_string(r.procedure)},
         {"lower", to_json(r.lower)},
         {"upper", to_json(r.upper)},
         {"steps_taken", r.steps_taken},
         {"terminated", r.terminated},
         {"used_fallback", r.used_fallback},
         {"nodes", r.nodes},
         {"seed", r.seed},
         {"chain", to_json(r.chain)}};
  if (r.vector) j["vector"] = to_json(*r.vector);
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

inline Json facet_json(const FacetData& f) {
  return Json{{"height", to_json(f.height)}, {"generators", to_json(f.generators)}};
}

inline std::string vec_text(const IntVector& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

inline std::string chain_text(const Chain& ch) {
  std::ostringstream s;
  s << "chain of " << ch.length() << " moves, verified=" << (ch.verified ? "true" : "false") << "\n";
  for (std::size_t i = 0; i < ch.moves.size(); ++i)
    s << "  " << i << ": " << to_string(ch.moves[i].direction) << " " << to_string(ch.moves[i].kind) << " witness "
      << vec_text(ch.moves[i].witness) << "\n";
  return s.str();
}

inline Outcome chain_outcome(const Chain& ch) {
  Chain c = ch;
  c.verified = verify_chain(c);
  return {to_json(c), chain_text(c), c.verified ? kOk : kFailed};
}

inline void need_cones(const Options& o, std::size_t n) {
  if (o.cones.size() != n)
    io::malformed("expected " + std::to_string(n) + " cone argument" + (n == 1 ? "" : "s"));
}

inline Outcome cmd_hilbert(const Options& o) {
  need_cones(o, 1);
  CanonicalizationNotes notes;
  Cone c = io::load_cone(o.cones[0], &notes);
  const auto& hb = hilbert_basis(c);
  Json doc{{"cone", to_json(c)}, {"hilbert_basis", to_json(hb)}, {"count", hb.size()}};
  if (notes.changed()) doc["canonicalization"] = to_json(notes);
  std::string s = std::to_string(hb.size()) + " Hilbert basis elements:";
  for (const auto& h : hb) s += " " + vec_text(h);
  return {doc, s + "\n"};
}

inline Outcome cmd_facets(const Options& o) {
  need_cones(o, 1);
  CanonicalizationNotes notes;
  Cone c = io::load_cone(o.cones[0], &notes);
  Json fs = Json::array();
  std::string s = "dim " + std::to_string(c.dim()) + ", " + std::to_string(c.generators().size()) + " extremal generators, " +
                  std::to_string(c.facets().size()) + " facets\n";
  for (const auto& f : c.facets()) {
    fs.push_back(facet_json(f));
    s += "  ht " + vec_text(f.height) + "\n";
  }
  Json doc{{"cone", to_json(c)}, {"dim", c.dim()}, {"facets", fs}, {"positive_functional", to_json(c.positive_functional())}};
  if (notes.changed()) doc["canonicalization"] = to_json(notes);
  return {doc, s};
}

inline Outcome cmd_triangulate(const Options& o) {
  need_cones(o, 1);
  Cone c = io::load_cone(o.cones[0]);
  Triangulation t = unimodular_triangulation(c);
  Json pieces = Json::array();
  for (const auto& p : t.pieces) pieces.push_back(to_json(p));
  bool ok = t.unimodular() && verify_triangulation(t);
  return {Json{{"cone", to_json(c)}, {"pieces", pieces}, {"unimodular", t.unimodular()}, {"verified", ok}},
          std::to_string(t.pieces.size()) + " unimodular pieces, verified=" + (ok ? "true" : "false") + "\n",
          ok ? kOk : kFailed};
}

inline Outcome cmd_check_ext(const Options& o) {
  need_cones(o, 2);
  Cone c = io::load_cone(o.cones[0]), d = io::load_cone(o.cones[1]);
  auto chk = check_elementary(c, d);
  Json doc{{"verdict", to_string(chk.verdict)}};
  if (chk.witness) doc["witness"] = to_json(*chk.witness);
  Json fails = Json::array();
  for (const auto& f : chk.failed_candidates)
    fails.push_back(Json{{"candidate", to_json(f.candidate)}, {"blocking", to_json(f.blocking)}});
  doc["failed_candidates"] = fails;
  std::string s = std::string(to_string(chk.verdict));
  if (chk.witness) s += " witness " + vec_text(*chk.witness);
  bool ok = chk.verdict == Verdict::Elementary || chk.verdict == Verdict::Equal;
  return {doc, s + "\n", ok ? kOk : kFailed};
}

inline Outcome cmd_height1(const Options& o) {
  need_cones(o, 1);
  Cone c = io::load_cone(o.cones[0]);
  IntVector v = io::load_vector(o.vector);
  auto h = height1_data(c, v, o.radius);
  Json vis = Json::array();
  for (const auto& f : h.visible) vis.push_back(facet_json(f));
  Json doc{{"visible", vis},
           {"lambda_1", h.lambda_1.str()},
           {"is_height_1", h.is_height_1},
           {"first_layer", to_json(h.first_layer)}};
  std::ostringstream s;
  s << "lambda_1 = " << h.lambda_1 << ", height-1 " << (h.is_height_1 ? "yes" : "no") << ", shortest layer point "
    << vec_text(h.first_layer.front()) << "\n";
  return {doc, s.str()};
}

inline Outcome cmd_descents(const Options& o) {
  need_cones(o, 1);
  Cone d = io::load_cone(o.cones[0]);
  Cone fl = o.floor.empty() ? Cone::zero(d.ambient_dim()) : io::load_cone(o.floor);
  Json out = Json::array();
  std::string s;
  for (const auto& ds : hilbert_descents(d, fl)) {
    out.push_back(Json{{"dropped", to_json(ds.dropped)}, {"cone", to_json(ds.cone)}});
    s += "drop " + vec_text(ds.dropped) + "\n";
  }
  return {Json{{"descents", out}}, s.empty() ? "no descents\n" : s};
}

inline Outcome cmd_intermediate(const Options& o) {
  need_cones(o, 2);
  Cone c = io::load_cone(o.cones[0]), d = io::load_cone(o.cones[1]);
  Cone e = strict_intermediate(c, d, o.radius);
  std::string s = "E:";
  for (const auto& g : e.generators()) s += " " + vec_text(g);
  return {Json{{"intermediate", to_json(e)}, {"verified", true}}, s + "\n"};
}

inline Outcome cmd_corner(const Options& o) {
  need_cones(o, 1);
  Cone c = io::load_cone(o.cones[0]);
  auto us = corner_witness(c, io::load_vector(o.vector));
  Json out = Json::array();
  for (const auto& u : us) out.push_back(to_json(u));
  return {Json{{"cones", out}, {"verified", true}}, std::to_string(us.size()) + " unimodular corner cones\n"};
}

inline Outcome cmd_chain2d(const Options& o) {
  need_cones(o, 2);
  return chain_outcome(chain_2d(io::load_cone(o.cones[0]), io::load_cone(o.cones[1])));
}

inline Outcome cmd_chain3d(const Options& o) {
  need_cones(o, 2);
  return chain_outcome(chain_dim3(io::load_cone(o.cones[0]), io::load_cone(o.cones[1])));
}

inline Outcome cmd_connect(const Options& o) {
  need_cones(o, 2);
  ConnectMode mode;
  if (o.mode == "via-zero") mode = ConnectMode::ViaZero;
  else if (o.mode == "full-dim") mode = ConnectMode::FullDim;
  else io::malformed("unknown mode " + o.mode);
  return chain_outcome(connect(io::load_cone(o.cones[0]), io::load_cone(o.cones[1]), mode));
}

inline Outcome cmd_factor(const Options& o) {
  need_cones(o, 2);
  return chain_outcome(factor_unimodular_path(io::load_cone(o.cones[0]), io::load_cone(o.cones[1])));
}

inline Outcome search_outcome(const SearchReport& r) {
  bool ok = verify_chain(r.chain);
  std::string s = std::string(to_string(r.procedure)) + ": " + std::to_string(r.steps_taken) + " steps, " +
                  (r.terminated ? "terminated" : "not terminated") + "\n";
  return {report_json(r), s, !ok ? kFailed : (r.terminated ? kOk : kExhausted)};
}

inline Outcome cmd_bottom_up(const Options& o) {
  need_cones(o, 1);
  return search_outcome(bottom_up(io::load_cone(o.cones[0]), io::load_vector(o.vector), o.budget, o.radius, o.seed));
}

inline Outcome cmd_top_down(const Options& o) {
  need_cones(o, 2);
  return search_outcome(top_down(io::load_cone(o.cones[0]), io::load_cone(o.cones[1]), o.budget, o.seed));
}

inline Outcome cmd_verify_chain(const Options& o) {
  if (o.chain_file.empty()) io::malformed("verify-chain needs a chain file");
  Chain ch = io::chain_from_json(io::parse_json(io::read_file(o.chain_file)));
  auto rep = verify_chain_report(ch);
  Json steps = Json::array();
  std::string s = std::string("chain ") + (rep.ok ? "verified" : "rejected") + "\n";
  for (const auto& st : rep.steps) {
    Json j{{"index", st.index}, {"ok", st.ok}};
    if (!st.ok) {
      Json ref = Json::array();
      for (const auto& f : st.refutation)
        ref.push_back(Json{{"candidate", to_json(f.candidate)}, {"blocking", to_json(f.blocking)}});
      j["refutation"] = ref;
      s += "  step " + std::to_string(st.index) + " fails\n";
    }
    steps.push_back(j);
  }
  return {Json{{"verified", rep.ok}, {"steps", steps}}, s, rep.ok ? kOk : kFailed};
}

inline Outcome cmd_random_cone(const Options& o) {
  Cone c = random_cone(o.dim, o.generators, o.bound, o.seed);
  return {Json{{"seed", o.seed}, {"cone", to_json(c)}}, "seed " + std::to_string(o.seed) + ": " +
                                                            std::to_string(c.generators().size()) + " extremal generators\n"};
}

inline Outcome cmd_is_normal(const Options& o) {
  if (o.points.empty()) io::malformed("is-normal needs a polytope");
  LatticePolytope p = LatticePolytope::hull(io::load_points(o.points));
  bool n = is_normal(p);
  return {Json{{"vertices", to_json(p.vertices)}, {"lattice_points", to_json(p.lattice_points)}, {"normal", n}},
          std::string(n ? "normal" : "not normal") + "\n"};
}

inline Outcome cmd_example_c12(const Options& o) {
  auto r = c12::run(o.budget, o.radius);
  const bool ok = r.p_normal && r.q_normal && r.drop_first_nonnormal && r.drop_second_nonnormal &&
                  r.four_are_hilbert_descents && r.four.chain.length() == 4;
  Json doc{{"P", {{"vertices", to_json(c12::polytope_p().vertices)}, {"normal", r.p_normal}}},
           {"Q", {{"vertices", to_json(c12::polytope_q().vertices)}, {"normal", r.q_normal}}},
           {"drop_first_vertex_normal", !r.drop_first_nonnormal},
           {"drop_second_vertex_normal", !r.drop_second_nonnormal},
           {"shortest_descent_chain", report_json(r.shortest)},
           {"four_descent_chain", report_json(r.four)},
           {"four_are_hilbert_descents", r.four_are_hilbert_descents}};
  std::ostringstream s;
  s << "P " << (r.p_normal ? "normal" : "not normal") << "\n"
    << "Q " << (r.q_normal ? "normal" : "not normal") << "\n"
    << "P without (0,0,2): " << (r.drop_first_nonnormal ? "not normal" : "normal") << "\n"
    << "P without (0,0,1): " << (r.drop_second_nonnormal ? "not normal" : "normal") << "\n"
    << "shortest descent chain C(P) > ... > C(Q): " << r.shortest.steps_taken << " steps\n"
    << "descent chain of length 4: " << (r.four_are_hilbert_descents ? "found, verified" : "not found") << "\n";
  return {doc, s.str(), ok ? kOk : kFailed};
}

}  // namespace detail

/// Runs one subcommand; returns the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the poset of rational cones", "conepos"};
  app.require_subcommand(1);
  Options o;

  using Handler = std::function<Outcome(const Options&)>;
  std::map<CLI::App*, Handler> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::size_t ncones, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    if (ncones == 1) s->add_option("cone", o.cones, "cone file or inline rows like \"1,0;1,5\"")->required()->expected(1);
    if (ncones == 2) s->add_option("cones", o.cones, "C and D: cone files or inline rows")->required()->expected(2);
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    handlers[s] = std::move(h);
    return s;
  };

  sub("hilbert", "Hilbert basis of a cone", 1, detail::cmd_hilbert);
  sub("facets", "extremal generators and facet height functionals", 1, detail::cmd_facets);
  sub("triangulate", "unimodular triangulation", 1, detail::cmd_triangulate);
  sub("check-ext", "decide whether C < D is an elementary extension", 2, detail::cmd_check_ext);
  sub("height1", "first height layer of (C, v)", 1, detail::cmd_height1)->add_option("--vector", o.vector)->required();
  app.get_subcommand("height1")->add_option("--radius", o.radius);
  sub("descents", "Hilbert-basis descents of D above a floor", 1, detail::cmd_descents)->add_option("--floor", o.floor);
  sub("intermediate", "a cone strictly between an elementary pair", 2, detail::cmd_intermediate)->add_option("--radius", o.radius);
  sub("corner-witness", "unimodular corner cones for C < C + R_+v", 1, detail::cmd_corner)
      ->add_option("--vector", o.vector)
      ->required();
  sub("chain2d", "chain of height-1 extensions for dim D <= 2", 2, detail::cmd_chain2d);
  sub("chain3d", "chain from C to D in R^3", 2, detail::cmd_chain3d);
  sub("connect", "path of elementary moves between two cones", 2, detail::cmd_connect)
      ->add_option("--mode", o.mode)
      ->check(CLI::IsMember({"via-zero", "full-dim"}));
  sub("factor-path", "path between unimodular full-dimensional cones", 2, detail::cmd_factor);
  CLI::App* bu = sub("bottom-up", "bottom-up height-1 procedure", 1, detail::cmd_bottom_up);
  bu->add_option("--vector", o.vector)->required();
  bu->add_option("--budget", o.budget);
  bu->add_option("--radius", o.radius);
  bu->add_option("--seed", o.seed);
  CLI::App* td = sub("top-down", "top-down Hilbert-basis descent procedure", 2, detail::cmd_top_down);
  td->add_option("--budget", o.budget);
  td->add_option("--seed", o.seed);
  sub("verify-chain", "verify a chain file", 0, detail::cmd_verify_chain)->add_option("chain", o.chain_file)->required();
  CLI::App* rc = sub("random-cone", "seeded random pointed full-dimensional cone", 0, detail::cmd_random_cone);
  rc->add_option("--dim", o.dim);
  rc->add_option("--generators", o.generators);
  rc->add_option("--bound", o.bound);
  rc->add_option("--seed", o.seed);
  sub("is-normal", "normality of a lattice polytope", 0, detail::cmd_is_normal)
      ->add_option("polytope", o.points, "points file or inline rows")
      ->required();
  CLI::App* ex = sub("example-c12", "the built-in normal-polytope example", 0, detail::cmd_example_c12);
  ex->add_option("--budget", o.budget);
  ex->add_option("--radius", o.radius);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kMalformed;
  }

  for (auto& [s, h] : handlers) {
    if (!s->parsed()) continue;
    try {
      Outcome res = h(o);
      if (o.format == "text") out << res.summary;
      else out << res.doc.dump(2) << "\n";
      return res.code;
    } catch (const ConeError& e) {
      Json doc{{"error", to_string(e.kind())}, {"message", e.what()}};
      err << doc.dump() << "\n";
      switch (e.kind()) {
        case ErrorKind::MalformedInput:
        case ErrorKind::NotPointed:
        case ErrorKind::DimensionMismatch: return kMalformed;
        case ErrorKind::LayerSearchExhausted:
        case ErrorKind::RetriesExhausted: return kExhausted;
        default: return kFailed;
      }
    }
  }
  return kMalformed;
}

}  // namespace conepos::cli

// JSON wire formats. Complex scalars are [re, im]; complex matrices are
// row-major arrays of such pairs.
#pragma once

#include <nlohmann/json.hpp>

#include "ncjensen/fixtures.hpp"

namespace ncj::io {

using nlohmann::json;

inline json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j.at(r).at(c));
  return m;
}

inline json real_vector_to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline RealVector real_vector_from_json(const json& j) {
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
  return v;
}

// --- words and polynomials ---

inline json letter_to_json(const Letter& l) {
  json out{{"alg", l.algebra}};
  if (l.is_poly())
    out["poly"] = real_vector_to_json(l.poly());
  else
    out["mat"] = matrix_to_json(l.mat());
  return out;
}

inline Letter letter_from_json(const json& j) {
  const int alg = j.at("alg").get<int>();
  if (j.contains("poly")) return Letter(alg, real_vector_from_json(j.at("poly")));
  return Letter(alg, matrix_from_json(j.at("mat")));
}

inline json ncpoly_to_json(const NCPoly& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms) {
    json word = json::array();
    for (const Letter& l : w.letters) word.push_back(letter_to_json(l));
    terms.push_back({{"coeff", complex_to_json(c)}, {"word", word}});
  }
  return json{{"terms", terms}};
}

inline NCPoly ncpoly_from_json(const json& j) {
  NCPoly p;
  for (const auto& term : j.at("terms")) {
    std::vector<Letter> letters;
    for (const auto& lj : term.at("word")) letters.push_back(letter_from_json(lj));
    ReducedWord red = reduce_word(letters);
    p.add(red.word, complex_from_json(term.at("coeff")) * red.scalar);
  }
  return p;
}

// --- measures, reps, functionals ---

inline json ovmeasure_to_json(const OVMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms) atoms.push_back({{"t", a.t}, {"Q", matrix_to_json(a.Q)}});
  return json{{"algebra", m.algebra},
              {"k", m.k},
              {"interval", {m.lo, m.hi}},
              {"atoms", atoms}};
}

inline OVMeasure ovmeasure_from_json(const json& j) {
  OVMeasure m;
  m.algebra = j.value("algebra", 0);
  m.k = j.at("k").get<Eigen::Index>();
  m.lo = j.at("interval").at(0).get<double>();
  m.hi = j.at("interval").at(1).get<double>();
  for (const auto& aj : j.at("atoms"))
    m.atoms.push_back({aj.at("t").get<double>(), matrix_from_json(aj.at("Q"))});
  return m;
}

inline json finiterep_to_json(const FiniteRep& rep) {
  json gens = json::object();
  for (const auto& [i, g] : rep.generators) gens[std::to_string(i)] = matrix_to_json(g);
  return json{{"N", rep.dim}, {"generators", gens}};
}

inline FiniteRep finiterep_from_json(const json& j) {
  FiniteRep rep;
  rep.dim = j.at("N").get<Eigen::Index>();
  for (const auto& [key, gj] : j.at("generators").items())
    rep.generators[std::stoi(key)] = matrix_from_json(gj);
  rep.validate();
  return rep;
}

inline json subspace_to_json(const Subspace& s) {
  json cols = json::array();
  for (Eigen::Index c = 0; c < s.basis.cols(); ++c) {
    json col = json::array();
    for (Eigen::Index r = 0; r < s.basis.rows(); ++r)
      col.push_back(complex_to_json(s.basis(r, c)));
    cols.push_back(col);
  }
  return json{{"ambient", s.ambient}, {"columns", cols}};
}

inline Subspace subspace_from_json(const json& j) {
  const Eigen::Index ambient = j.at("ambient").get<Eigen::Index>();
  const auto& cols = j.at("columns");
  Matrix b(ambient, static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index c = 0; c < b.cols(); ++c)
    for (Eigen::Index r = 0; r < ambient; ++r)
      b(r, c) = complex_from_json(cols.at(c).at(r));
  return Subspace::from_columns(b);
}

inline json algebra_to_json(const AlgebraSpec& a) {
  if (a.is_interval())
    return json{{"index", a.index}, {"interval", {a.interval().lo, a.interval().hi}}};
  return json{{"index", a.index}, {"dim", a.matrix().dim}};
}

inline AlgebraSpec algebra_from_json(const json& j) {
  AlgebraSpec a;
  a.index = j.at("index").get<int>();
  if (j.contains("interval"))
    a.kind = IntervalAlgebra{j.at("interval").at(0).get<double>(),
                             j.at("interval").at(1).get<double>()};
  else
    a.kind = MatrixAlgebra{j.at("dim").get<int>()};
  return a;
}

inline json cfree_to_json(const CFreeFunctional& F) {
  json algebras = json::array(), ucp = json::array(), states = json::array();
  for (const auto& a : F.algebras) algebras.push_back(algebra_to_json(a));
  for (const auto& m : F.ucp) ucp.push_back(ovmeasure_to_json(m));
  for (const auto& s : F.states) states.push_back(ovmeasure_to_json(s));
  return json{{"algebras", algebras}, {"ucp", ucp}, {"states", states}};
}

inline CFreeFunctional cfree_from_json(const json& j) {
  CFreeFunctional F;
  for (const auto& aj : j.at("algebras")) F.algebras.push_back(algebra_from_json(aj));
  for (const auto& mj : j.at("ucp")) F.ucp.push_back(ovmeasure_from_json(mj));
  for (const auto& sj : j.at("states")) F.states.push_back(ovmeasure_from_json(sj));
  F.k = F.ucp.empty() ? 1 : F.ucp[0].k;
  F.validate();
  return F;
}

inline json compressed_to_json(const CompressedPointEval& mu) {
  return json{{"rep", finiterep_to_json(mu.rep)}, {"isometry", matrix_to_json(mu.isometry)}};
}

inline CompressedPointEval compressed_from_json(const json& j) {
  CompressedPointEval mu{finiterep_from_json(j.at("rep")), matrix_from_json(j.at("isometry"))};
  mu.validate();
  return mu;
}

// --- reports ---

inline json matrix_tuple_to_json(const MatrixTuple& x) {
  json entries = json::object();
  for (const auto& [i, m] : x.entries) entries[std::to_string(i)] = matrix_to_json(m);
  return json{{"level", x.level}, {"entries", entries}};
}

inline json jensen_report_to_json(const JensenReport& r) {
  return json{{"lhs", matrix_to_json(r.lhs)},
              {"rhs", matrix_to_json(r.rhs)},
              {"gap", matrix_to_json(r.gap)},
              {"min_eig", r.min_eig},
              {"tol", r.tol},
              {"verdict", r.holds ? "holds" : "violated"}};
}

inline json pattern_report_to_json(const PatternReport& r) {
  json patterns = json::array();
  for (const auto& e : r.patterns) patterns.push_back({{"pattern", e.pattern}, {"dim", e.dim}});
  json offending = json::array();
  for (const auto& o : r.offending)
    offending.push_back({{"a", o.a.empty() ? "(empty)" : o.a},
                         {"b", o.b.empty() ? "(empty)" : o.b},
                         {"norm", o.norm}});
  return json{{"patterns", patterns},
              {"offdiag", r.offdiag},
              {"tol", r.tol},
              {"verdict", r.verdict},
              {"offending", offending},
              {"truncation_hits", r.truncation_hits},
              {"minimal_truncated", r.minimal_truncated},
              {"degenerate", r.degenerate}};
}

inline json fubini_report_to_json(const FubiniReport& r) {
  json steps = json::array();
  for (const auto& s : r.nontrivial) steps.push_back(s);
  return json{{"ok", r.ok}, {"nontrivial_per_step", steps}, {"failure", r.failure}};
}

inline json witness_to_json(const ConvexityWitness& w) {
  return json{{"mode", w.mode == ConvexityMode::Separate ? "separate" : "joint"},
              {"level", w.level},
              {"coordinate", w.coordinate},
              {"x", matrix_tuple_to_json(w.x)},
              {"y", matrix_tuple_to_json(w.y)},
              {"isometry", matrix_to_json(w.isometry)},
              {"defect", w.defect},
              {"trial", w.trial}};
}

inline json semicircular_to_json(const SemicircularExperiment& e) {
  json trials = json::array();
  for (const auto& t : e.trials)
    trials.push_back({{"trial", t.index},
                      {"sym_min_eig", t.sym_min_eig},
                      {"sym_gap_norm", t.sym_gap_norm},
                      {"sq_min_eig", t.sq_min_eig}});
  return json{{"k", e.k},
              {"radii", e.radii},
              {"seed", e.seed},
              {"worst_sym_min_eig", e.worst_sym},
              {"worst_sq_min_eig", e.worst_sq},
              {"worst_sym_gap", e.worst_sym_gap},
              {"all_hold", e.all_hold},
              {"trials", trials}};
}

}  // namespace ncj::io

#include "qexp/io.hpp"

#include <fstream>
#include <sstream>

namespace qexp {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

std::vector<Rational> rationals_from(const Json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json rational_matrix(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RationalMatrix rational_matrix_from(const Json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  RationalMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j.at(r).at(c));
  }
  return m;
}

Json doubles(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

Json rational_to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("rational must be an integer or a \"num/den\" string, got " + j.dump());
}

Json subset_to_json(Subset s, int n) {
  Json out = Json::array();
  for (int i = 0; i < n; ++i) {
    if (s >> i & 1U) out.push_back(i + 1);
  }
  return out;
}

Subset subset_from_json(const Json& j, int n) {
  if (!j.is_array()) throw ParseError("subset must be an array of variable indices");
  Subset s = 0;
  for (const auto& e : j) {
    const int i = e.get<int>();
    if (i < 1 || i > n) throw ParseError("variable index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    if (s >> (i - 1) & 1U) throw ParseError("repeated variable index " + std::to_string(i));
    s |= Subset{1} << (i - 1);
  }
  return s;
}

PointFunction function_from_json(const Json& j) {
  return guarded("function spec", [&] {
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kMaxVariables) throw ParseError("n must lie in [1, " + std::to_string(kMaxVariables) + "]");
    const auto repr = j.at("repr").get<std::string>();
    const Json& data = j.at("data");
    if (repr == "truth_table") return PointFunction(n, rationals_from(data));
    if (repr == "symmetric") {
      auto profile = rationals_from(data);
      if (profile.size() != static_cast<std::size_t>(n) + 1) throw ParseError("symmetric profile needs n+1 values");
      return from_symmetric(SymmetricProfile{n, std::move(profile)});
    }
    if (repr == "monomials") {
      MultilinearPoly p(n);
      for (const auto& term : data) p.coeff(subset_from_json(term.at("S"), n)) += rational_from_json(term.at("coeff"));
      std::vector<Rational> values;
      for (Point x = 0; x < cube_size(n); ++x) values.push_back(p.evaluate(x));
      return PointFunction(n, std::move(values));
    }
    throw ParseError("unknown repr \"" + repr + "\"");
  });
}

PointFunction load_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return guarded("function spec", [&] { return function_from_json(Json::parse(in)); });
}

Json function_to_json(const PointFunction& f) {
  return Json{{"n", f.n()}, {"repr", "truth_table"}, {"data", rationals(f.values())}};
}

Json to_json(const NonnegLiteralRep& rep) {
  Json terms = Json::array();
  for (const auto& t : rep.terms) {
    Json bits = Json::array();
    for (int i = 0; i < rep.n; ++i) {
      if (t.set >> i & 1U) bits.push_back((t.negated >> i & 1U) ? 1 : 0);
    }
    terms.push_back({{"S", subset_to_json(t.set, rep.n)}, {"b", bits}, {"alpha", rational_to_json(t.alpha)}});
  }
  return Json{{"n", rep.n}, {"degree", rep.degree()}, {"terms", terms}};
}

NonnegLiteralRep literal_rep_from_json(const Json& j) {
  return guarded("literal representation", [&] {
    NonnegLiteralRep rep;
    rep.n = j.at("n").get<int>();
    for (const auto& t : j.at("terms")) {
      LiteralTerm term;
      term.set = subset_from_json(t.at("S"), rep.n);
      const auto& bits = t.at("b");
      if (bits.size() != static_cast<std::size_t>(weight(term.set))) throw ParseError("b must have one bit per index in S");
      std::size_t k = 0;
      for (int i = 0; i < rep.n; ++i) {
        if (!(term.set >> i & 1U)) continue;
        if (bits.at(k++).get<int>() == 1) term.negated |= Subset{1} << i;
      }
      term.alpha = rational_from_json(t.at("alpha"));
      rep.terms.push_back(term);
    }
    return rep;
  });
}

Json to_json(const FarkasCertificate& cert) { return Json{{"y", rationals(cert.y)}}; }

FarkasCertificate farkas_from_json(const Json& j) {
  return guarded("Farkas certificate", [&] { return FarkasCertificate{rationals_from(j.at("y"))}; });
}

Json to_json(const NnlDegreeResult& r) {
  Json certs = Json::array();
  for (std::size_t d = 0; d < r.lower_certificates.size(); ++d) {
    auto c = to_json(r.lower_certificates[d]);
    c["d"] = d;
    certs.push_back(std::move(c));
  }
  return Json{{"degree", r.degree}, {"representation", to_json(r.rep)}, {"infeasibility_certificates", certs}};
}

Json to_json(const SosDecomposition& dec) {
  Json basis = Json::array();
  for (Subset s : dec.basis) basis.push_back(subset_to_json(s, dec.n));
  Json squares = Json::array();
  for (const auto& v : dec.squares) squares.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return Json{{"n", dec.n},
              {"degree", dec.degree},
              {"basis", basis},
              {"gram", doubles(dec.gram)},
              {"squares", squares},
              {"residual", dec.residual},
              {"tol", kSosVerifyTol},
              {"target", rationals(dec.target)}};
}

SosDecomposition decomposition_from_json(const Json& j) {
  return guarded("sos decomposition", [&] {
    SosDecomposition dec;
    dec.n = j.at("n").get<int>();
    dec.degree = j.at("degree").get<int>();
    for (const auto& s : j.at("basis")) dec.basis.push_back(subset_from_json(s, dec.n));
    const auto& g = j.at("gram");
    const auto m = static_cast<Eigen::Index>(dec.basis.size());
    if (static_cast<Eigen::Index>(g.size()) != m) throw ParseError("gram size does not match basis");
    dec.gram.resize(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) dec.gram(r, c) = g.at(r).at(c).get<double>();
    }
    for (const auto& s : j.at("squares")) {
      const auto v = s.get<std::vector<double>>();
      if (static_cast<Eigen::Index>(v.size()) != m) throw ParseError("square length does not match basis");
      dec.squares.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), m));
    }
    dec.residual = j.at("residual").get<double>();
    dec.target = rationals_from(j.at("target"));
    return dec;
  });
}

Json to_json(const SosWitness& w) {
  return Json{{"n", w.n},
              {"degree", w.degree},
              {"multipliers", rationals(w.multipliers)},
              {"moment_matrix", rational_matrix(w.moment_matrix)},
              {"value", rational_to_json(w.value)}};
}

SosWitness sos_witness_from_json(const Json& j) {
  return guarded("sos witness", [&] {
    SosWitness w;
    w.n = j.at("n").get<int>();
    w.degree = j.at("degree").get<int>();
    w.multipliers = rationals_from(j.at("multipliers"));
    w.moment_matrix = rational_matrix_from(j.at("moment_matrix"));
    w.value = rational_from_json(j.at("value"));
    return w;
  });
}

Json to_json(const Undetermined& u) {
  return Json{{"undetermined", true}, {"residual", u.residual}, {"iterations", u.iterations}, {"reason", u.reason}};
}

Json to_json(const SosDegreeResult& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
  return Json{{"lower", r.lower},
              {"upper", r.upper},
              {"exact", r.exact()},
              {"decomposition", to_json(r.decomposition)},
              {"witnesses", witnesses},
              {"undetermined_levels", r.undetermined_levels}};
}

Json to_json(const LasserreValue& v) {
  return Json{{"bounded", v.bounded},
              {"lower", rational_to_json(v.lower)},
              {"upper", rational_to_json(v.upper)},
              {"lower_approx", v.lower.get_d()},
              {"upper_approx", v.upper.get_d()},
              {"converged", v.converged},
              {"width_tol", kLasserreWidth},
              {"probes", v.probes}};
}

Json to_json(const LowerBoundReport& r) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < r.pointwise.size(); ++i) {
    const int k = r.pointwise[i].first;
    pts.push_back({{"k", k},
                   {"q", r.pointwise[i].second},
                   {"bound", k == 1 || k == 2 ? 0.0 : 1.0 / ((k - 1.0) * (k - 2.0))},
                   {"ok", static_cast<bool>(r.pointwise_ok[i])}});
  }
  Json q = Json::array();
  for (const auto& c : r.quotient.coeffs()) q.push_back(c.get_d());
  return Json{{"n", r.n},
              {"sos_degree_upper", r.sos_degree_upper},
              {"Q0", r.big_q_0},
              {"Q1", r.big_q_1},
              {"Q2", r.big_q_2},
              {"quotient", q},
              {"remainder_norm", r.remainder_norm},
              {"pointwise", pts},
              {"markov", {{"value", r.markov.value},
                          {"max_derivative", r.markov.max_derivative},
                          {"max_value", r.markov.max_value},
                          {"grid_points", r.markov.grid_points}}},
              {"sqrt_n_over_48", r.sqrt_n_over_48},
              {"tol", r.tol},
              {"passed", r.passed()}};
}

Json to_json(const SamplerAlgorithm& s) {
  Json terms = Json::array();
  for (std::size_t j = 0; j < s.terms.size(); ++j) {
    NonnegLiteralRep one{s.n, {s.terms[j]}};
    auto t = to_json(one)["terms"][0];
    t["probability"] = rational_to_json(s.probabilities[j]);
    terms.push_back(std::move(t));
  }
  return Json{{"n", s.n}, {"total_mass", rational_to_json(s.total_mass)}, {"queries", s.query_cost}, {"terms", terms}};
}

Json to_json(const QuantumExpAlgorithm& alg) {
  Json comps = Json::array();
  for (const auto& c : alg.components) {
    comps.push_back({{"support_degree", c.support_degree}, {"normalizer", c.normalizer}, {"payout", c.payout}});
  }
  return Json{{"n", alg.n},
              {"queries", alg.query_cost},
              {"multiplier", alg.multiplier()},
              {"phase_oracle_assumed", alg.phase_oracle_assumed},
              {"components", comps}};
}

Json to_json(const ExpectationReport& r, std::uint64_t seed) {
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) outcomes.push_back({{"value", rational_to_json(o.value)}, {"prob", o.probability}});
  return Json{{"x", r.x},
              {"analytic", r.analytic},
              {"analytic_exact", rational_to_json(r.exact)},
              {"simulated", r.simulated},
              {"queries", r.queries},
              {"outcomes", outcomes},
              {"max_norm_error", r.max_norm_error},
              {"max_amplitude_error", r.max_amplitude_error},
              {"seed", seed}};
}

Json to_json(const MonteCarloResult& r) {
  return Json{{"mean", r.mean},
              {"standard_error", r.standard_error},
              {"analytic", r.analytic},
              {"trials", r.trials},
              {"seed", r.seed},
              {"generator", r.generator}};
}

Json to_json(const TailoredSearchPlan& plan) {
  Json stage2 = Json::array();
  for (const auto& b : plan.stage2) {
    stage2.push_back({{"t", b.run.t}, {"repetitions", b.repetitions}, {"iterations", b.run.iterations}, {"cost", b.run.cost}});
  }
  return Json{{"m", plan.m},
              {"ell", plan.ell},
              {"stage1_runs", plan.stage1.size()},
              {"stage1_queries", plan.stage1_queries},
              {"stage2", stage2},
              {"stage2_queries", plan.stage2_queries},
              {"verification_queries", plan.verification_queries},
              {"total_queries", plan.total_queries}};
}

Json to_json(const BudgetReport& r) {
  Json rows = Json::array();
  for (const auto& b : r.rows) {
    rows.push_back({{"m", b.m}, {"ell", b.ell}, {"stage1", b.stage1}, {"stage2", b.stage2},
                    {"verification", b.verification}, {"total", b.total}, {"ratio", b.ratio}});
  }
  return Json{{"rows", rows}, {"C", r.constant}};
}

Json to_json(const PsdFactorization& fac) {
  Json rows = Json::array(), cols = Json::array();
  for (const auto& a : fac.row_factors) rows.push_back(doubles(a));
  for (const auto& b : fac.col_factors) cols.push_back(doubles(b));
  return Json{{"size", fac.size},
              {"max_error", fac.max_error},
              {"tol", 1e-6},
              {"min_eigenvalue", fac.min_eigenvalue},
              {"A", rows},
              {"B", cols}};
}

Json to_json(const NonnegFactorization& fac) {
  Json rows = Json::array(), cols = Json::array();
  for (const auto& a : fac.row_vectors) rows.push_back(rationals(a));
  for (const auto& b : fac.col_vectors) cols.push_back(rationals(b));
  return Json{{"size", fac.size}, {"a", rows}, {"b", cols}};
}

Json to_json(const SlackMatrixDescriptor& d, bool with_entries) {
  Json out{{"polytope", d.polytope == SlackMatrixDescriptor::Polytope::Matching ? "matching" : "correlation-submatrix"},
           {"n", d.n},
           {"rows", d.matrix.entries.rows()},
           {"cols", d.matrix.entries.cols()}};
  if (d.polytope == SlackMatrixDescriptor::Polytope::Matching) {
    Json odd = Json::array();
    for (Subset u : d.odd_sets) odd.push_back(subset_to_json(u, d.n));
    Json matchings = Json::array();
    for (const auto& m : d.matchings) {
      Json edges = Json::array();
      for (const auto& [a, b] : m) edges.push_back({a + 1, b + 1});
      matchings.push_back(std::move(edges));
    }
    out["odd_sets"] = odd;
    out["degree_rows"] = d.degree_rows;
    out["nonneg_rows"] = d.nonneg_rows;
    out["matchings"] = matchings;
  } else {
    out["profile"] = {rational_to_json(d.profile.a), rational_to_json(d.profile.b), rational_to_json(d.profile.c)};
  }
  if (with_entries) out["entries"] = rational_matrix(d.matrix.entries);
  return out;
}

Json to_json(const MatchingApproxReport& r) {
  return Json{{"n", r.exact.n},
              {"epsilon", r.epsilon},
              {"ell", r.ell},
              {"ell_unrounded", r.ell_unrounded},
              {"odd_rows", r.exact.odd_sets.size()},
              {"columns", r.exact.matchings.size()},
              {"exact_class_entries", r.exact_class_entries},
              {"exact_class_entries_unrounded", r.exact_class_entries_unrounded},
              {"sandwich_entries", r.sandwich_entries},
              {"violations", r.violations},
              {"query_cost", r.query_cost},
              {"rank_bound", r.rank_bound},
              {"passed", r.passed()}};
}

std::string matrix_to_csv(const NonnegMatrix& m) {
  std::ostringstream out;
  out << "# " << Json{{"rows", m.row_labels}, {"cols", m.col_labels}}.dump() << '\n';
  for (std::size_t r = 0; r < m.entries.rows(); ++r) {
    for (std::size_t c = 0; c < m.entries.cols(); ++c) {
      if (c) out << ',';
      out << format_rational(m.entries(r, c));
    }
    out << '\n';
  }
  return out.str();
}

NonnegMatrix matrix_from_csv(const std::string& text) {
  return guarded("matrix csv", [&] {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw ParseError("missing label header");
    const auto header = Json::parse(line.substr(2));
    NonnegMatrix m;
    m.row_labels = header.at("rows").get<std::vector<std::string>>();
    m.col_labels = header.at("cols").get<std::vector<std::string>>();
    m.entries = RationalMatrix(m.row_labels.size(), m.col_labels.size());
    for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
      if (!std::getline(in, line)) throw ParseError("too few matrix rows");
      const auto cells = split(line, ',');
      if (cells.size() != m.col_labels.size()) throw ParseError("row " + std::to_string(r) + " has the wrong width");
      for (std::size_t c = 0; c < cells.size(); ++c) m.entries(r, c) = parse_rational(cells[c]);
    }
    m.validate();
    return m;
  });
}

}  // namespace qexp

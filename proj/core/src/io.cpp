#include "sobolab/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sobolab {

namespace {

std::vector<double> doubles(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing JSON key \"") + key + "\"");
  return j.at(key).get<std::vector<double>>();
}

json split_complex(std::span<const cplx> values, json& out) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(values.size());
  im.reserve(values.size());
  for (const cplx& v : values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}

std::vector<cplx> join_complex(const json& j, std::size_t expected) {
  const auto re = doubles(j, "re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = doubles(j, "im");
  if (re.size() != expected || im.size() != expected) {
    throw std::invalid_argument("JSON \"re\"/\"im\" arrays have the wrong length");
  }
  std::vector<cplx> out(expected);
  for (std::size_t i = 0; i < expected; ++i) out[i] = {re[i], im[i]};
  return out;
}

// %.17g round-trips every double and is locale-independent for the C locale.
std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

json to_json(const PiecewiseLinear& f) {
  json j;
  j["knots"] = std::vector<double>(f.knots().begin(), f.knots().end());
  split_complex(f.values(), j);
  if (!f.periodic()) j["periodic"] = false;
  return j;
}

PiecewiseLinear pl_from_json(const json& j) {
  auto knots = doubles(j, "knots");
  auto values = join_complex(j, knots.size());
  const bool periodic = j.value("periodic", true);
  return {std::move(knots), std::move(values), periodic};
}

json to_json(const SpectrumCoeffs& c) {
  json j;
  j["kmax"] = c.kmax();
  split_complex(c.coeffs(), j);
  return j;
}

SpectrumCoeffs spectrum_from_json(const json& j) {
  const int kmax = j.at("kmax").get<int>();
  if (kmax < 0) throw std::invalid_argument("spectrum JSON: negative kmax");
  return {kmax, join_complex(j, 2 * static_cast<std::size_t>(kmax) + 1)};
}

json to_json(const TriangleSystem& sys) {
  std::vector<double> b(sys.size());
  for (std::size_t k = 0; k < sys.size(); ++k) b[k] = sys.b(k);
  return {{"a", sys.starts()}, {"b", b}, {"delta", sys.deltas()}, {"w", sys.weights()}};
}

TriangleSystem system_from_json(const json& j) {
  auto a = doubles(j, "a");
  std::vector<double> delta;
  if (j.contains("delta")) {
    delta = doubles(j, "delta");
  } else {
    const auto b = doubles(j, "b");
    if (b.size() != a.size()) throw std::invalid_argument("system JSON: a/b length mismatch");
    delta.resize(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) delta[k] = (b[k] - a[k]) / 6.0;
  }
  auto w = doubles(j, "w");
  return {std::move(a), std::move(delta), std::move(w)};
}

json to_json(const Homeomorphism& h) {
  return {{"t", std::vector<double>(h.knots_in().begin(), h.knots_in().end())},
          {"s", std::vector<double>(h.knots_out().begin(), h.knots_out().end())}};
}

Homeomorphism homeo_from_json(const json& j) { return {doubles(j, "t"), doubles(j, "s")}; }

json to_json(const DeltaSequence& d) {
  return {{"epsilons", d.epsilons},
          {"block_sizes", d.block_sizes},
          {"block_starts", d.block_starts},
          {"count", d.size()},
          {"exploratory", d.exploratory}};
}

json to_json(const SeminormReport& r) {
  return {{"spectral", r.spectral}, {"integral", r.integral}, {"s", r.s}, {"N", r.n}};
}

json to_json(const StieltjesReport& r) {
  std::vector<std::size_t> violations;
  for (std::size_t k : r.violations) violations.push_back(k + 1);
  std::vector<std::size_t> negative;
  for (std::size_t k : r.negative) negative.push_back(k + 1);
  return {{"n", r.n},
          {"value", r.value},
          {"lower_bound", r.lower_bound},
          {"weights", r.weights},
          {"per_interval", r.per_interval},
          {"bound_terms", r.bound_terms},
          {"violations", violations},
          {"negative", negative},
          {"total_ok", r.total_ok},
          {"holds", r.holds()}};
}

json to_json(const DualityReport& r) {
  return {{"lhs", r.lhs},       {"x_norm", r.x_norm},
          {"y_norm", r.y_norm}, {"y_tail_bound", r.y_tail_bound},
          {"rhs", r.rhs},       {"holds", r.holds},
          {"tail_warning", r.tail_warning}};
}

json to_json(const LacunaryReport& r) {
  return {{"terms", r.terms}, {"seminorm_sq", r.seminorm_sq}, {"lip_half_ratio", r.lip_half_ratio}};
}

json to_json(const SuiteResult& r) {
  return {{"name", r.name},       {"passed", r.passed},   {"warning", r.warning},
          {"detail", r.detail},   {"witness", r.witness}, {"seconds", r.seconds}};
}

json to_json(const VerifyReport& r) {
  json suites = json::array();
  for (const auto& s : r.suites) suites.push_back(to_json(s));
  return {{"passed", r.passed()}, {"suites", suites}};
}

json to_json(const ObstructionRecord& r) {
  // Wall-clock time is left out so repeated runs give identical files.
  return {{"J", r.blocks},
          {"K", r.triangles},
          {"n_grid", r.n_grid},
          {"stieltjes", r.stieltjes},
          {"certified", r.certified},
          {"sup_lower_bound", r.sup_lower_bound},
          {"certified_bound", r.certified_bound},
          {"identity_products", r.identity_products},
          {"best_homeo", to_json(r.best_homeo)},
          {"achieved_products", r.achieved_products},
          {"min_product", r.min_product},
          {"evals", r.evals},
          {"budget_exhausted", r.budget_exhausted},
          {"violations", r.violations},
          {"audited", r.audited},
          {"audit_failures", r.audit_failures},
          {"audit_max_error", r.audit_max_error},
          {"search_scope", "piecewise-linear homeomorphisms with uniform input knots; "
                           "the minimum is empirical, the lower bound is certified"}};
}

std::string stieltjes_csv(const StieltjesReport& r) {
  std::ostringstream os;
  os << "k,w_k,contribution,lower_bound_term\n";
  for (std::size_t k = 0; k < r.per_interval.size(); ++k) {
    os << k + 1 << ',' << num(r.weights[k]) << ',' << num(r.per_interval[k]) << ','
       << num(r.bound_terms[k]) << '\n';
  }
  return os.str();
}

std::string obstruction_csv(const std::vector<ObstructionRecord>& records) {
  std::ostringstream os;
  os << "J,K,sup_lower_bound,certified_bound,min_product,evals,violations\n";
  for (const auto& r : records) {
    os << r.blocks << ',' << r.triangles << ',' << num(r.sup_lower_bound) << ','
       << num(r.certified_bound) << ',' << num(r.min_product) << ',' << r.evals << ','
       << r.violations << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + ": " + errno_text());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing: " + errno_text());
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write to " + path + " failed: " + errno_text());
}

}  // namespace sobolab

#include "epilab/descriptors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "epilab/errors.hpp"

namespace epilab {

namespace {

std::vector<double> parse_numbers(const std::string& s, char sep, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + tok + "' in " + where);
    }
  }
  return out;
}

std::pair<std::string, std::string> split_head(const std::string& s) {
  const auto pos = s.find(':');
  if (pos == std::string::npos) throw UsageError("descriptor '" + s + "' has no ':'");
  return {s.substr(0, pos), s.substr(pos + 1)};
}

}  // namespace

AnalyticDensity parse_analytic_descriptor(const std::string& s) {
  const auto [head, rest] = split_head(s);
  try {
    if (head == "gauss") {
      const auto v = parse_numbers(rest, ',', s);
      if (v.size() != 2) throw UsageError("gauss needs mean,variance: " + s);
      return validate(Gaussian{v[0], v[1]});
    }
    if (head == "uniform") {
      const auto v = parse_numbers(rest, ',', s);
      if (v.size() != 2) throw UsageError("uniform needs a,b: " + s);
      return validate(Uniform{v[0], v[1]});
    }
    if (head == "cauchy") {
      const auto v = parse_numbers(rest, ',', s);
      if (v.size() != 2) throw UsageError("cauchy needs location,scale: " + s);
      return validate(Cauchy{v[0], v[1]});
    }
    if (head == "exp") {
      const auto v = parse_numbers(rest, ',', s);
      if (v.size() != 1) throw UsageError("exp needs rate: " + s);
      return validate(Exponential{v[0]});
    }
    if (head == "mix") {
      GaussianMixture m;
      std::stringstream ss(rest);
      std::string comp;
      double wsum = 0.0;
      while (std::getline(ss, comp, ';')) {
        const auto v = parse_numbers(comp, ',', s);
        if (v.size() != 3) throw UsageError("mix component needs w,mean,var: " + s);
        m.weights.push_back(v[0]);
        m.components.push_back(Gaussian{v[1], v[2]});
        wsum += v[0];
      }
      if (m.weights.empty() || !(wsum > 0.0)) throw UsageError("mix needs components: " + s);
      for (auto& w : m.weights) w /= wsum;
      return validate(m);
    }
  } catch (const InvalidParameter& e) {
    throw UsageError(std::string(e.what()) + " in " + s);
  }
  throw UsageError("unknown continuous family '" + head + "' in " + s);
}

IntegerPmf parse_pmf_descriptor(const std::string& s) {
  const auto [head, rest] = split_head(s);
  try {
    if (head == "dgauss") {
      const auto v = parse_numbers(rest, ',', s);
      if (v.size() != 2) throw UsageError("dgauss needs mu,sigma2: " + s);
      return discretized_gaussian(v[0], v[1]);
    }
    if (head == "geom") {
      const auto v = parse_numbers(rest, ',', s);
      if (v.size() != 1) throw UsageError("geom needs q: " + s);
      return geometric_pmf(v[0]);
    }
    if (head == "binom") {
      const auto v = parse_numbers(rest, ',', s);
      if (v.size() != 2) throw UsageError("binom needs n,p: " + s);
      if (v[0] < 1.0 || v[0] != std::floor(v[0])) throw UsageError("binom n must be a positive integer: " + s);
      return binomial_pmf(static_cast<long>(v[0]), v[1]);
    }
    if (head == "poisson") {
      const auto v = parse_numbers(rest, ',', s);
      if (v.size() != 1) throw UsageError("poisson needs lambda: " + s);
      return poisson_pmf(v[0]);
    }
    if (head == "uniform") {
      const auto v = parse_numbers(rest, ',', s);
      if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
        throw UsageError("uniform pmf needs integer a,b: " + s);
      }
      return uniform_pmf(static_cast<long>(v[0]), static_cast<long>(v[1]));
    }
  } catch (const InvalidParameter& e) {
    throw UsageError(std::string(e.what()) + " in " + s);
  }
  throw UsageError("unknown pmf family '" + head + "' in " + s);
}

}  // namespace epilab

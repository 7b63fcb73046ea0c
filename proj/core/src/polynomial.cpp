#include "zipring/polynomial.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace zipring {

namespace {

long weighted_degree(const std::vector<uint32_t>& exp, const std::vector<int>& w) {
  long d = 0;
  for (size_t i = 0; i < exp.size(); ++i) d += static_cast<long>(exp[i]) * w[i];
  return d;
}

}  // namespace

Polynomial::Polynomial(std::vector<int> weights) : weights_(std::move(weights)) {
  for (int w : weights_)
    if (w <= 0) throw std::invalid_argument("generator weights must be positive");
}

Polynomial Polynomial::constant(std::vector<int> weights, const Rational& c) {
  Polynomial p(std::move(weights));
  p.add_term(std::vector<uint32_t>(p.nvars(), 0), c);
  return p;
}

Polynomial Polynomial::generator(std::vector<int> weights, size_t i) {
  Polynomial p(std::move(weights));
  if (i >= p.nvars()) throw std::invalid_argument("generator index out of range");
  std::vector<uint32_t> exp(p.nvars(), 0);
  exp[i] = 1;
  p.add_term(std::move(exp), Rational(1));
  return p;
}

long Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.wdeg;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.wdeg == terms_.rbegin()->first.wdeg;
}

Monomial Polynomial::make_monomial(std::vector<uint32_t> exp) const {
  if (exp.size() != nvars()) throw std::invalid_argument("monomial arity mismatch");
  Monomial m{std::move(exp), 0};
  m.wdeg = weighted_degree(m.exp, weights_);
  return m;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.exp.size() != nvars()) throw std::invalid_argument("monomial arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::add_term(std::vector<uint32_t> exp, const Rational& c) {
  add_term(make_monomial(std::move(exp)), c);
}

const Rational* Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? nullptr : &it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (weights_ != rhs.weights_) throw std::invalid_argument("weight vector mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (weights_ != rhs.weights_) throw std::invalid_argument("weight vector mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.weights_ != b.weights_) throw std::invalid_argument("weight vector mismatch");
  Polynomial out(a.weights_);
  Monomial prod;
  prod.exp.resize(a.nvars());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (size_t i = 0; i < prod.exp.size(); ++i) prod.exp[i] = ma.exp[i] + mb.exp[i];
      prod.wdeg = ma.wdeg + mb.wdeg;
      out.add_term(prod, ca * cb);
    }
  }
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.weights_ == b.weights_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::graded_component(long d) const {
  Polynomial out(weights_);
  for (const auto& [m, c] : terms_)
    if (m.wdeg == d) out.terms_.emplace(m, c);
  return out;
}

std::vector<long> Polynomial::support_degrees() const {
  std::vector<long> degs;
  for (const auto& [m, c] : terms_)
    if (degs.empty() || degs.back() != m.wdeg) degs.push_back(m.wdeg);
  return degs;
}

std::string Polynomial::to_string(const std::string& prefix) const {
  std::vector<std::string> names(nvars());
  for (size_t i = 0; i < names.size(); ++i) names[i] = prefix + std::to_string(i + 1);
  return to_string(names);
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (names.size() != nvars()) throw std::invalid_argument("name list arity mismatch");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Reverse iteration gives decreasing monomial order.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational abs_c = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    std::string factors;
    for (size_t i = 0; i < m.exp.size(); ++i) {
      if (m.exp[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += names[i];
      if (m.exp[i] > 1) factors += "^" + std::to_string(m.exp[i]);
    }
    if (factors.empty()) {
      os << zipring::to_string(abs_c);
    } else if (abs_c == 1) {
      os << factors;
    } else {
      os << zipring::to_string(abs_c) << "*" << factors;
    }
  }
  return os.str();
}

std::string Polynomial::to_json_string() const {
  nlohmann::json j;
  j["weights"] = weights_;
  auto& terms = j["terms"] = nlohmann::json::array();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    nlohmann::json t;
    t["exp"] = it->first.exp;
    t["num"] = it->second.get_num().get_str();
    t["den"] = it->second.get_den().get_str();
    terms.push_back(std::move(t));
  }
  return j.dump();
}

Polynomial Polynomial::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Polynomial p(j.at("weights").get<std::vector<int>>());
  for (const auto& t : j.at("terms")) {
    auto exp = t.at("exp").get<std::vector<uint32_t>>();
    Rational c = make_rational(Integer(t.at("num").get<std::string>()),
                               Integer(t.at("den").get<std::string>()));
    p.add_term(std::move(exp), c);
  }
  return p;
}

}  // namespace zipring

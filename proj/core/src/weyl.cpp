#include "zipring/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace zipring {

SignedPermutation SignedPermutation::identity(int g) {
  SignedPermutation w;
  w.images.resize(g);
  for (int i = 0; i < g; ++i) w.images[i] = i + 1;
  return w;
}

SignedPermutation SignedPermutation::simple_reflection(int g, int i) {
  if (i < 0 || i >= g) throw std::invalid_argument("reflection index out of range");
  SignedPermutation w = identity(g);
  if (i == 0) {
    w.images[0] = -1;
  } else {
    std::swap(w.images[i - 1], w.images[i]);
  }
  return w;
}

int SignedPermutation::apply(int i) const {
  int a = std::abs(i);
  if (a < 1 || a > g()) throw std::invalid_argument("letter out of range");
  int v = images[a - 1];
  return i < 0 ? -v : v;
}

void SignedPermutation::validate() const {
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    int a = std::abs(v);
    if (a < 1 || a > g() || seen[a - 1])
      throw std::invalid_argument("not a signed permutation");
    seen[a - 1] = true;
  }
}

std::string SignedPermutation::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < images.size(); ++i) {
    if (i) os << ",";
    os << images[i];
  }
  return os.str();
}

SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b) {
  if (a.g() != b.g()) throw std::invalid_argument("rank mismatch");
  SignedPermutation out;
  out.images.resize(a.g());
  for (int i = 1; i <= b.g(); ++i) out.images[i - 1] = a.apply(b.apply(i));
  return out;
}

SignedPermutation inverse(const SignedPermutation& w) {
  SignedPermutation out;
  out.images.resize(w.g());
  for (int i = 1; i <= w.g(); ++i) {
    int v = w.images[i - 1];
    out.images[std::abs(v) - 1] = v < 0 ? -i : i;
  }
  return out;
}

long length(const SignedPermutation& w) {
  long inv = 0, neg = 0;
  const auto& a = w.images;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) neg += -a[i];
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] > a[j]) ++inv;
  }
  return inv + neg;
}

void EOType::validate() const {
  if (g < 0) throw std::invalid_argument("negative genus");
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1 || parts[i] > g)
      throw std::invalid_argument("part out of range");
    if (i && parts[i - 1] <= parts[i])
      throw std::invalid_argument("parts must be strictly decreasing");
  }
}

long EOType::codim() const {
  long s = 0;
  for (int p : parts) s += p;
  return s;
}

std::string EOType::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ",";
    os << parts[i];
  }
  os << "]";
  return os.str();
}

std::string EOType::to_json_string() const {
  nlohmann::json j;
  j["g"] = g;
  j["parts"] = parts;
  return j.dump();
}

EOType EOType::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EOType t;
  t.g = j.at("g").get<int>();
  t.parts = j.at("parts").get<std::vector<int>>();
  t.validate();
  return t;
}

CosetTable CosetTable::build(int g) {
  if (g < 1 || g > 16) throw std::invalid_argument("genus out of range");
  CosetTable table;
  table.g_ = g;
  for (unsigned mask = 0; mask < (1u << g); ++mask) {
    std::vector<int> neg;  // negated positions, increasing
    for (int i = 1; i <= g; ++i)
      if (mask & (1u << (i - 1))) neg.push_back(i);
    int k = static_cast<int>(neg.size());

    CosetRep rep;
    rep.w.images.assign(g, 0);
    // Negative positions carry -k..-1 in increasing order, positive
    // positions carry k+1..g in increasing order; this is the unique
    // length-minimal element with the given sign pattern.
    for (int t = 0; t < k; ++t) rep.w.images[neg[t] - 1] = -(k - t);
    int next = k + 1;
    for (int i = 0; i < g; ++i)
      if (rep.w.images[i] == 0) rep.w.images[i] = next++;
    rep.len = length(rep.w);

    rep.type.g = g;
    rep.type.parts.assign(neg.rbegin(), neg.rend());
    rep.type.validate();
    if (rep.len != rep.type.codim())
      throw std::logic_error("coset length does not match partition size");
    table.reps_.push_back(std::move(rep));
  }
  std::sort(table.reps_.begin(), table.reps_.end(),
            [](const CosetRep& a, const CosetRep& b) {
              if (a.len != b.len) return a.len < b.len;
              return a.w.images < b.w.images;
            });
  return table;
}

const CosetRep& CosetTable::rep_for(const EOType& t) const {
  for (const auto& r : reps_)
    if (r.type == t) return r;
  throw std::invalid_argument("no representative for type " + t.to_string());
}

std::string CosetTable::to_csv() const {
  std::ostringstream os;
  os << "rep,length,partition\n";
  for (const auto& r : reps_)
    os << "\"" << r.w.to_string() << "\"," << r.len << ",\"" << r.type.to_string()
       << "\"\n";
  return os.str();
}

Polynomial poincare_WP(int g) {
  CosetTable table = CosetTable::build(g);
  Polynomial sum({1});
  for (const auto& r : table.reps())
    sum.add_term({static_cast<uint32_t>(r.len)}, Rational(1));

  Polynomial product = Polynomial::constant({1}, Rational(1));
  for (int i = 1; i <= g; ++i) {
    Polynomial factor = Polynomial::constant({1}, Rational(1));
    factor.add_term({static_cast<uint32_t>(i)}, Rational(1));
    product = product * factor;
  }
  if (!(sum == product))
    throw std::logic_error("coset length generating function failed product check");
  return sum;
}

EOType iota_embedding(int g, int r, const EOType& t) {
  if (r < 0 || r >= g) throw std::invalid_argument("corank out of range");
  if (t.g != g - r) throw std::invalid_argument("type has wrong genus");
  t.validate();
  EOType out;
  out.g = g;
  out.parts = t.parts;
  out.validate();
  return out;
}

}  // namespace zipring

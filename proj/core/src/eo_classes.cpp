#include "zipring/eo_classes.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace zipring {

Integer prank_stratum_coefficient(int g, int f, const Integer& p) {
  if (f < 0 || f > g) throw std::invalid_argument("need 0 <= f <= g");
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  Integer out = 1;
  Integer power = 1;
  for (int i = 1; i <= g - f; ++i) {
    power *= p;
    out *= power - 1;
  }
  return out;
}

RingElement prank_stratum_class(const RingData& ring, int f, const Integer& p) {
  int g = ring.g();
  if (f < 0 || f >= g) throw std::invalid_argument("need 0 <= f < g");
  Integer c = prank_stratum_coefficient(g, f, p);
  Polynomial poly = Polynomial::generator(ring.presentation().weights,
                                          static_cast<size_t>(g - f - 1));
  poly *= Rational(c);
  return element(ring, poly);
}

std::string StratumTable::to_csv() const {
  std::ostringstream out;
  out << "g,p,f,codim,coefficient,class\n";
  for (const auto& row : rows) {
    out << g << ',' << p.get_str() << ',' << row.f << ',' << row.codim << ','
        << row.coefficient.get_str() << ",\"" << row.class_text << "\"\n";
  }
  return out.str();
}

std::string StratumTable::to_json_string() const {
  nlohmann::json j;
  j["g"] = g;
  j["p"] = p.get_str();
  auto& arr = j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    arr.push_back({{"f", row.f},
                   {"codim", row.codim},
                   {"coefficient", row.coefficient.get_str()},
                   {"class", row.class_text}});
  }
  return j.dump();
}

StratumTable stratum_table(int g, const Integer& p) {
  StratumTable table;
  table.g = g;
  table.p = p;
  auto rd = ring(g);
  for (int f = g - 1; f >= 0; --f) {
    StratumRow row;
    row.f = f;
    row.codim = g - f;
    row.coefficient = prank_stratum_coefficient(g, f, p);
    row.class_text = prank_stratum_class(*rd, f, p).nf.to_string();
    table.rows.push_back(std::move(row));
  }
  return table;
}

bool effectivity_check(const StratumTable& table) {
  auto rd = ring(table.g);
  for (const auto& row : table.rows) {
    if (row.coefficient <= 0) return false;
    if (is_zero(prank_stratum_class(*rd, row.f, table.p))) return false;
  }
  return true;
}

bool strata_realized(const StratumTable& table, const OrbitDecomposition& dec) {
  if (dec.g != table.g || Integer(dec.p) != table.p) return false;
  std::set<long> pranks;
  for (const auto& c : dec.classes) pranks.insert(c.p_rank);
  for (long f = 0; f <= table.g; ++f)
    if (!pranks.count(f)) return false;
  return true;
}

}  // namespace zipring

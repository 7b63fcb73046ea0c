#pragma once

#include <string>
#include <vector>

#include "zipring/rational.hpp"
#include "zipring/taut_ring.hpp"
#include "zipring/zip_oracle.hpp"

namespace zipring {

// Multiplier of the degree g-f generator in the class of the locus where the
// p-rank is at most f: prod_{i=1..g-f} (p^i - 1).  Exact integer, so large
// primes are fine.
Integer prank_stratum_coefficient(int g, int f, const Integer& p);

// That multiple of u_{g-f} as a ring element.
RingElement prank_stratum_class(const RingData& ring, int f, const Integer& p);

struct StratumRow {
  int f = 0;  // maximal p-rank on the locus
  long codim = 0;
  Integer coefficient;
  std::string class_text;
};

struct StratumTable {
  int g = 0;
  Integer p;
  std::vector<StratumRow> rows;  // f = g-1 down to 0

  // header g,p,f,codim,coefficient,class
  std::string to_csv() const;
  std::string to_json_string() const;
};

StratumTable stratum_table(int g, const Integer& p);

// All coefficients positive and all classes nonzero in the ring.
bool effectivity_check(const StratumTable& table);

// The point-level enumeration must realize every p-rank 0..g and must match
// the table's genus and prime.
bool strata_realized(const StratumTable& table, const OrbitDecomposition& dec);

}  // namespace zipring

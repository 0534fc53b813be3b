// Copyright 2026 The permsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "permsynth/cnf.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "permsynth/graph.hpp"

namespace permsynth {

int CnfFormula::new_vars(int count) {
  const int first = num_vars_ + 1;
  num_vars_ += count;
  return first;
}

void CnfFormula::add_clause(std::span<const Lit> lits) {
  if (lits.empty()) throw std::logic_error("empty clause");
  offsets_.push_back(lits_.size());
  for (Lit l : lits) {
    if (l == 0 || std::abs(l) > num_vars_) {
      throw std::logic_error("literal references an unallocated variable");
    }
    lits_.push_back(l);
  }
}

std::span<const Lit> CnfFormula::clause(std::size_t i) const {
  const std::size_t begin = offsets_[i];
  const std::size_t end = i + 1 < offsets_.size() ? offsets_[i + 1] : lits_.size();
  return {lits_.data() + begin, end - begin};
}

void CnfFormula::at_most_one(std::span<const Lit> lits) {
  for (std::size_t i = 0; i < lits.size(); ++i)
    for (std::size_t j = i + 1; j < lits.size(); ++j) add_clause({-lits[i], -lits[j]});
}

void CnfFormula::exactly_one(std::span<const Lit> lits) {
  at_least_one(lits);
  at_most_one(lits);
}

void CnfFormula::xor_equals(Lit out, Lit a, Lit b) {
  add_clause({-out, a, b});
  add_clause({-out, -a, -b});
  add_clause({out, -a, b});
  add_clause({out, a, -b});
}

std::size_t CnfFormula::first_falsified(const std::vector<bool>& model) const {
  for (std::size_t i = 0; i < num_clauses(); ++i) {
    bool sat = false;
    for (Lit l : clause(i)) {
      const bool v = model.at(static_cast<std::size_t>(std::abs(l)));
      if ((l > 0) == v) {
        sat = true;
        break;
      }
    }
    if (!sat) return i;
  }
  return num_clauses();
}

bool CnfFormula::satisfied_by(const std::vector<bool>& model) const {
  return first_falsified(model) == num_clauses();
}

void CnfFormula::write_dimacs(std::ostream& out) const {
  out << "p cnf " << num_vars_ << ' ' << num_clauses() << '\n';
  for (std::size_t i = 0; i < num_clauses(); ++i) {
    for (Lit l : clause(i)) out << l << ' ';
    out << "0\n";
  }
}

std::string CnfFormula::to_dimacs() const {
  std::ostringstream os;
  write_dimacs(os);
  return os.str();
}

CnfFormula CnfFormula::parse_dimacs(std::istream& in) {
  CnfFormula f;
  std::string token;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<Lit> current;
  while (in >> token) {
    if (token == "c") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (token == "p") {
      std::string fmt;
      int vars = 0;
      if (!(in >> fmt >> vars >> declared_clauses) || fmt != "cnf" || vars < 0) {
        throw InvalidInput("malformed DIMACS header");
      }
      f.num_vars_ = vars;
      header = true;
      continue;
    }
    if (!header) throw InvalidInput("DIMACS clause before header");
    char* end = nullptr;
    long v = std::strtol(token.c_str(), &end, 10);
    if (*end != '\0') throw InvalidInput("malformed DIMACS literal '" + token + "'");
    if (v == 0) {
      f.add_clause(current);
      current.clear();
    } else {
      current.push_back(static_cast<Lit>(v));
    }
  }
  if (!current.empty()) throw InvalidInput("unterminated DIMACS clause");
  if (f.num_clauses() != declared_clauses) {
    throw InvalidInput("DIMACS clause count does not match header");
  }
  return f;
}

}  // namespace permsynth

#pragma once

#include <istream>
#include <string>

#include "gct/polyspace.hpp"
#include "gct/tableau.hpp"

namespace gct {

// form <m> <D>
// <a1> ... <am> : <p>/<q>
SparseForm parse_form(std::istream& in);
SparseForm parse_form(const std::string& text);
std::string serialize_form(const SparseForm& f);

// tensor <m1> <m2> <m3>   or   tensor-cubic <m> <D>
// <i> <j> <k> : <p>/<q>
SparseTensor parse_tensor(std::istream& in);
SparseTensor parse_tensor(const std::string& text);
std::string serialize_tensor(const SparseTensor& t);

// tableau <m> <s>, then m rows of s integers
Tableau parse_tableau(std::istream& in);
Tableau parse_tableau(const std::string& text);
std::string serialize_tableau(const Tableau& T);

}  // namespace gct

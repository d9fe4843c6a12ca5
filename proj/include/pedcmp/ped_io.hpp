#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pedcmp/pedigree.hpp"

namespace pedcmp {

// Text pedigree format: UTF-8, one record per line,
//   id father mother sex label
// separated by spaces/tabs; `0` stands for "no parent" / "no label";
// sex is 1 = male, 2 = female. Lines whose first non-blank character is
// '#' are comments. Record order is irrelevant and forward references to
// parents are accepted.
std::vector<PedRecord> parse_ped_records(std::istream& in);
std::vector<PedRecord> parse_ped_records(const std::string& text);

Pedigree read_pedigree(const std::string& path);
Pedigree pedigree_from_text(const std::string& text);

void write_pedigree(std::ostream& out, const Pedigree& p);
void write_pedigree_file(const std::string& path, const Pedigree& p);
std::string pedigree_to_text(const Pedigree& p);

}  // namespace pedcmp

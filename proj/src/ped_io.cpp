#include "pedcmp/ped_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pedcmp {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

uint64_t parse_u64(const std::string& s, int line_no, const char* what) {
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw PedigreeError(PedigreeErrorCode::BadRecord,
                        "line " + std::to_string(line_no) + ": bad " + what +
                            " '" + s + "'");
  return value;
}

}  // namespace

std::vector<PedRecord> parse_ped_records(std::istream& in) {
  std::vector<PedRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    if (fields.size() != 5)
      throw PedigreeError(PedigreeErrorCode::BadRecord,
                          "line " + std::to_string(line_no) + ": expected 5 fields, got " +
                              std::to_string(fields.size()));
    PedRecord r;
    r.id = fields[0];
    r.father = fields[1];
    r.mother = fields[2];
    r.sex = static_cast<int>(parse_u64(fields[3], line_no, "sex"));
    r.label = parse_u64(fields[4], line_no, "label");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<PedRecord> parse_ped_records(const std::string& text) {
  std::istringstream in(text);
  return parse_ped_records(in);
}

Pedigree read_pedigree(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw PedigreeError(PedigreeErrorCode::BadRecord, "cannot open '" + path + "'");
  return Pedigree::validate(parse_ped_records(in));
}

Pedigree pedigree_from_text(const std::string& text) {
  return Pedigree::validate(parse_ped_records(text));
}

void write_pedigree(std::ostream& out, const Pedigree& p) {
  for (const PedRecord& r : p.to_records())
    out << r.id << ' ' << r.father << ' ' << r.mother << ' ' << r.sex << ' '
        << r.label << '\n';
}

void write_pedigree_file(const std::string& path, const Pedigree& p) {
  std::ofstream out(path);
  if (!out)
    throw PedigreeError(PedigreeErrorCode::BadRecord, "cannot write '" + path + "'");
  write_pedigree(out, p);
}

std::string pedigree_to_text(const Pedigree& p) {
  std::ostringstream out;
  write_pedigree(out, p);
  return out.str();
}

}  // namespace pedcmp

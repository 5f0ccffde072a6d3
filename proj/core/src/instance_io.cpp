#include "cellgroup/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "cellgroup/errors.hpp"

namespace cellgroup {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) words.push_back(line.substr(start, pos - start));
  }
  return words;
}

int parse_int(std::string_view word, int line) {
  int value = 0;
  const auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc{} || end != word.data() + word.size()) {
    throw SyntaxError(line, "expected an integer, got '" + std::string(word) + "'");
  }
  return value;
}

}  // namespace

RawInstance parse_raw_instance(std::string_view text) {
  RawInstance raw;
  bool have_machines = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    const auto keyword = words[0];
    if (keyword == "machines") {
      if (have_machines) throw SyntaxError(line_no, "'machines' given twice");
      if (words.size() != 2) throw SyntaxError(line_no, "'machines' takes exactly one count");
      raw.machine_count = parse_int(words[1], line_no);
      if (raw.machine_count < 1) throw SyntaxError(line_no, "machine count must be positive");
      have_machines = true;
    } else if (keyword == "part") {
      if (!have_machines) throw SyntaxError(line_no, "'part' before 'machines'");
      if (words.size() != 2) throw SyntaxError(line_no, "'part' takes exactly one number");
      const int k = parse_int(words[1], line_no);
      if (k != static_cast<int>(raw.part_routes.size()) + 1) {
        throw SyntaxError(line_no, "expected part " + std::to_string(raw.part_routes.size() + 1) + ", got " +
                                       std::to_string(k));
      }
      raw.part_routes.emplace_back();
    } else if (keyword == "route") {
      if (raw.part_routes.empty()) throw SyntaxError(line_no, "'route' before any 'part'");
      std::vector<int> row(static_cast<std::size_t>(raw.machine_count), 0);
      int previous = 0;
      for (std::size_t w = 1; w < words.size(); ++w) {
        const int m = parse_int(words[w], line_no);
        if (m < 1 || m > raw.machine_count) {
          throw SyntaxError(line_no, "machine " + std::to_string(m) + " outside 1.." +
                                         std::to_string(raw.machine_count));
        }
        if (m <= previous) throw SyntaxError(line_no, "machine indices must be strictly ascending");
        row[static_cast<std::size_t>(m - 1)] = 1;
        previous = m;
      }
      raw.incidence.push_back(std::move(row));
      raw.part_routes.back().push_back(static_cast<int>(raw.incidence.size()));
    } else {
      throw SyntaxError(line_no, "unknown keyword '" + std::string(keyword) + "'");
    }
    if (eol == text.size()) break;
  }
  if (!have_machines) throw SyntaxError(line_no, "missing 'machines' line");
  return raw;
}

Instance parse_instance(std::string_view text) { return validate_instance(parse_raw_instance(text)); }

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cli: cannot open instance file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string write_instance(const Instance& instance) {
  std::ostringstream out;
  out << "machines " << instance.machine_count() << '\n';
  for (const auto& part : instance.parts()) {
    out << "part " << part.id.value() << '\n';
    for (auto r : part.routes) {
      out << "route";
      for (auto m : instance.machines(r)) out << ' ' << m.value();
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace cellgroup

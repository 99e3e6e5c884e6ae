#include "il/annotated.hpp"

#include <cctype>
#include <sstream>

namespace il {

std::string format_fact(bool b) { return b ? "true" : "false"; }

std::string format_fact(const VarSet& xs) {
  std::string s = "{";
  bool first = true;
  for (const auto& x : xs) {
    if (!first) s += ',';
    s += x;
    first = false;
  }
  return s + "}";
}

namespace {

template <class A>
void write_node(const Annotated<A>& t, int depth, std::ostream& os) {
  for (int i = 0; i < depth; ++i) os << "  ";
  os << format_fact(t.fact) << "  # " << describe_node(*t.term) << '\n';
  for (const auto& s : t.sub) write_node(s, depth + 1, os);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Non-empty fact fields, with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> fact_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.emplace_back(line_no, line);
  }
  return out;
}

[[noreturn]] void bad_line(std::size_t line, std::string_view what) {
  throw std::invalid_argument("sidecar line " + std::to_string(line) + ": " + std::string(what));
}

}  // namespace

std::string write_sidecar(const Annotated<bool>& t) {
  std::ostringstream os;
  write_node(t, 0, os);
  return os.str();
}

std::string write_sidecar(const Annotated<VarSet>& t) {
  std::ostringstream os;
  write_node(t, 0, os);
  return os.str();
}

std::vector<bool> read_reach_sidecar(std::string_view text) {
  std::vector<bool> out;
  for (auto [line, field] : fact_lines(text)) {
    if (field == "true")
      out.push_back(true);
    else if (field == "false")
      out.push_back(false);
    else
      bad_line(line, "expected 'true' or 'false'");
  }
  return out;
}

std::vector<VarSet> read_live_sidecar(std::string_view text) {
  std::vector<VarSet> out;
  for (auto [line, field] : fact_lines(text)) {
    if (field.size() < 2 || field.front() != '{' || field.back() != '}')
      bad_line(line, "expected a set like {x,y}");
    VarSet xs;
    auto body = field.substr(1, field.size() - 2);
    while (!trim(body).empty()) {
      auto comma = body.find(',');
      auto item = trim(body.substr(0, comma));
      if (item.empty()) bad_line(line, "empty variable name");
      xs.emplace(item);
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
    }
    out.push_back(std::move(xs));
  }
  return out;
}

}  // namespace il

#include "fomc/element_set.hpp"

#include <algorithm>
#include <cctype>

#include "fomc/error.hpp"

namespace fomc {

std::string ElementSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (Element e : *this) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  out += '}';
  return out;
}

bool lex_less(ElementSet a, ElementSet b) {
  auto ea = a.elements();
  auto eb = b.elements();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

ElementSet parse_element_set(const std::string& text) {
  ElementSet out;
  std::string num;
  auto flush = [&] {
    if (num.empty()) return;
    int v = std::stoi(num);
    if (v < 0 || v >= kMaxDomain) throw Error("element out of range: " + num);
    out.insert(v);
    num.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      num += c;
    } else if (c == ',' || c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      throw Error("bad element set: " + text);
    }
  }
  flush();
  return out;
}

}  // namespace fomc

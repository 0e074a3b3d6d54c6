#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace fomc {

using Element = int;

// Domains are kept small enough that a subset fits in one machine word.
inline constexpr int kMaxDomain = 32;

class ElementSet {
 public:
  class iterator {
   public:
    using value_type = Element;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(std::uint32_t rest) : rest_(rest) {}
    Element operator*() const { return std::countr_zero(rest_); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint32_t rest_ = 0;
  };

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint32_t bits) : bits_(bits) {}

  static ElementSet singleton(Element e) { return ElementSet(std::uint32_t{1} << e); }
  static ElementSet full(int n) {
    return ElementSet(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
  }
  static ElementSet of(const std::vector<Element>& elems) {
    ElementSet s;
    for (Element e : elems) s.insert(e);
    return s;
  }

  std::uint32_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool contains(Element e) const { return (bits_ >> e) & 1u; }
  bool subset_of(ElementSet other) const { return (bits_ & ~other.bits_) == 0; }
  Element min() const { return std::countr_zero(bits_); }

  void insert(Element e) { bits_ |= std::uint32_t{1} << e; }
  void erase(Element e) { bits_ &= ~(std::uint32_t{1} << e); }

  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

  std::vector<Element> elements() const { return {begin(), end()}; }

  ElementSet operator|(ElementSet o) const { return ElementSet(bits_ | o.bits_); }
  ElementSet operator&(ElementSet o) const { return ElementSet(bits_ & o.bits_); }
  ElementSet operator-(ElementSet o) const { return ElementSet(bits_ & ~o.bits_); }
  ElementSet& operator|=(ElementSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  ElementSet& operator&=(ElementSet o) {
    bits_ &= o.bits_;
    return *this;
  }

  bool operator==(const ElementSet&) const = default;
  auto operator<=>(const ElementSet&) const = default;

  // "{0,2,3}"
  std::string to_string() const;

 private:
  std::uint32_t bits_ = 0;
};

// Lexicographic comparison of the sorted element lists.
bool lex_less(ElementSet a, ElementSet b);

// Accepts "{0,1}", "0,1" and "{}".
ElementSet parse_element_set(const std::string& text);

}  // namespace fomc

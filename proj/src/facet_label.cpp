#include "rfold/facet_label.hpp"

#include <cctype>
#include <stdexcept>

namespace rfold {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  char take() { return s[i++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("bad facet label '" + s + "' at position " +
                             std::to_string(i) + ": " + msg);
  }
};

int parse_int(Cursor& c) {
  if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("digit expected");
  int v = 0;
  while (std::isdigit(static_cast<unsigned char>(c.peek()))) v = v * 10 + (c.take() - '0');
  return v;
}

FacetLabel parse_label(Cursor& c) {
  FacetLabel l(parse_int(c));
  if (c.peek() != '_') return l;
  c.take();
  if (c.peek() == '{') {
    c.take();
    l.subs.push_back(parse_label(c));
    while (c.peek() == ',') {
      c.take();
      l.subs.push_back(parse_label(c));
    }
    if (c.peek() != '}') c.fail("'}' expected");
    c.take();
  } else {
    // Shorthand X_k for a single atomic subscript.
    l.subs.push_back(FacetLabel(parse_int(c)));
  }
  return l;
}

}  // namespace

FacetLabel parse_facet_label(const std::string& text) {
  Cursor c{text};
  FacetLabel l = parse_label(c);
  if (!c.done()) c.fail("trailing characters");
  return l;
}

}  // namespace rfold

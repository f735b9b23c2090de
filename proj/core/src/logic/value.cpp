#include "ecplan/logic/value.hpp"

#include <algorithm>

namespace ecplan::logic {

namespace {

template <class T>
std::strong_ordering compare_sequences(const std::vector<T>& a, const std::vector<T>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return a.size() <=> b.size();
}

void append_args(std::string& out, const std::vector<Value>& args) {
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i].str();
  }
  out += ')';
}

}  // namespace

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  switch (a.kind_) {
    case Value::Kind::Integer:
      return a.number_ <=> b.number_;
    case Value::Kind::Symbol:
      return a.name_ <=> b.name_;
    case Value::Kind::Function:
      if (auto c = a.name_ <=> b.name_; c != 0) return c;
      return compare_sequences(a.args_, b.args_);
  }
  return std::strong_ordering::equal;
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::Integer:
      return std::to_string(number_);
    case Kind::Symbol:
      return name_;
    case Kind::Function: {
      std::string out = name_;
      append_args(out, args_);
      return out;
    }
  }
  return {};
}

std::strong_ordering operator<=>(const GroundAtom& a, const GroundAtom& b) {
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  return compare_sequences(a.args, b.args);
}

std::string GroundAtom::str() const {
  std::string out = predicate;
  if (!args.empty()) append_args(out, args);
  return out;
}

std::string to_string(const AtomSet& atoms) {
  std::string out;
  for (const auto& atom : atoms) {
    if (!out.empty()) out += ' ';
    out += atom.str();
  }
  return out;
}

}  // namespace ecplan::logic

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ecplan::logic {

/// A ground term: an integer, a symbolic constant, or a function symbol
/// applied to ground arguments (`move(north)`).
class Value {
 public:
  enum class Kind : std::uint8_t { Integer, Symbol, Function };

  Value() = default;

  static Value integer(std::int64_t number) {
    Value v;
    v.kind_ = Kind::Integer;
    v.number_ = number;
    return v;
  }
  static Value symbol(std::string name) {
    Value v;
    v.kind_ = Kind::Symbol;
    v.name_ = std::move(name);
    return v;
  }
  static Value function(std::string name, std::vector<Value> args) {
    if (args.empty()) return symbol(std::move(name));
    Value v;
    v.kind_ = Kind::Function;
    v.name_ = std::move(name);
    v.args_ = std::move(args);
    return v;
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool is_integer() const { return kind_ == Kind::Integer; }
  [[nodiscard]] std::int64_t number() const { return number_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<Value>& args() const { return args_; }

  [[nodiscard]] std::string str() const;

  friend bool operator==(const Value& a, const Value& b) {
    return a.kind_ == b.kind_ && a.number_ == b.number_ && a.name_ == b.name_ && a.args_ == b.args_;
  }
  // Integers order numerically and precede symbols, which precede functions.
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  Kind kind_ = Kind::Integer;
  std::int64_t number_ = 0;
  std::string name_;
  std::vector<Value> args_;
};

struct GroundAtom {
  std::string predicate;
  std::vector<Value> args;

  GroundAtom() = default;
  GroundAtom(std::string pred, std::vector<Value> arguments = {})
      : predicate(std::move(pred)), args(std::move(arguments)) {}

  [[nodiscard]] std::string str() const;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend std::strong_ordering operator<=>(const GroundAtom& a, const GroundAtom& b);
};

using AtomSet = std::set<GroundAtom>;

/// Predicate identity: name and arity.
struct Signature {
  std::string name;
  std::size_t arity = 0;
  friend auto operator<=>(const Signature&, const Signature&) = default;
  [[nodiscard]] std::string str() const { return name + "/" + std::to_string(arity); }
};

inline Signature signature_of(const GroundAtom& atom) { return {atom.predicate, atom.args.size()}; }

/// Space-separated rendering, in set order.
std::string to_string(const AtomSet& atoms);

}  // namespace ecplan::logic

#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hcevo::lang {

class Value;

// Interned field names. Records store symbol ids so that field access in the
// interpreter is an integer comparison.
int intern(std::string_view name);
const std::string& symbol_name(int id);

struct Tuple {
  std::vector<Value> items;
};

struct List {
  std::vector<Value> items;
};

// Entries are kept sorted by key with unique keys.
struct Map {
  std::vector<std::pair<Value, Value>> entries;
  const Value* find(const Value& key) const;
};

struct RecordShape {
  std::vector<int> fields;

  static std::shared_ptr<const RecordShape> make(
      std::initializer_list<std::string_view> names);
  int index_of(int symbol) const;
};

struct Record {
  std::shared_ptr<const RecordShape> shape;
  std::vector<Value> values;
  const Value* field(int symbol) const;
};

enum class Kind : std::uint8_t {
  kNone,
  kBool,
  kInt,
  kReal,
  kText,
  kTuple,
  kList,
  kMap,
  kRecord,
};

std::string_view kind_name(Kind kind);

// Immutable dynamically-typed value. Aggregates are shared, never mutated
// after construction, so copies are cheap and safe across threads.
class Value {
 public:
  Value() = default;

  static Value boolean(bool b);
  static Value integer(std::int64_t i);
  static Value real(double r);
  static Value text(std::string s);
  static Value tuple(std::vector<Value> items);
  static Value list(std::vector<Value> items);
  // Duplicate keys collapse, the last write wins.
  static Value map(std::vector<std::pair<Value, Value>> entries);
  // Entries must already be sorted by key and unique.
  static Value sorted_map(std::vector<std::pair<Value, Value>> entries);
  static Value record(std::shared_ptr<const RecordShape> shape,
                      std::vector<Value> values);

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  bool is_none() const { return kind() == Kind::kNone; }
  bool is_number() const {
    return kind() == Kind::kInt || kind() == Kind::kReal;
  }

  bool as_bool() const { return std::get<bool>(data_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data_); }
  double as_real() const { return std::get<double>(data_); }
  // Numeric value widened to double; requires is_number().
  double to_double() const;
  const std::string& as_text() const { return *std::get<TextPtr>(data_); }
  const Tuple& as_tuple() const { return *std::get<TuplePtr>(data_); }
  const List& as_list() const { return *std::get<ListPtr>(data_); }
  const Map& as_map() const { return *std::get<MapPtr>(data_); }
  const Record& as_record() const { return *std::get<RecordPtr>(data_); }

  // Items of a tuple or list.
  std::span<const Value> items() const;

 private:
  using TextPtr = std::shared_ptr<const std::string>;
  using TuplePtr = std::shared_ptr<const Tuple>;
  using ListPtr = std::shared_ptr<const List>;
  using MapPtr = std::shared_ptr<const Map>;
  using RecordPtr = std::shared_ptr<const Record>;

  std::variant<std::monostate, bool, std::int64_t, double, TextPtr, TuplePtr,
               ListPtr, MapPtr, RecordPtr>
      data_;
};

// Total order used for map keys and `sorted`: values of different kinds order
// by kind, except that integers and reals compare numerically.
int compare(const Value& a, const Value& b);

// Language-level equality (`==`): numeric across int/real, structural otherwise.
bool equals(const Value& a, const Value& b);

// Bit-level identity, including the exact representation of reals.
bool identical(const Value& a, const Value& b);

std::string debug_string(const Value& v);

}  // namespace hcevo::lang

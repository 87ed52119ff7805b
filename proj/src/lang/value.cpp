#include "hcevo/lang/value.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace hcevo::lang {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, int> ids;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

int kind_rank(Kind k) {
  // Integers and reals share a rank so that they interleave numerically.
  if (k == Kind::kReal) return static_cast<int>(Kind::kInt);
  return static_cast<int>(k);
}

int compare_numbers(const Value& a, const Value& b) {
  if (a.kind() == Kind::kInt && b.kind() == Kind::kInt) {
    return a.as_int() < b.as_int() ? -1 : (a.as_int() > b.as_int() ? 1 : 0);
  }
  const double x = a.to_double();
  const double y = b.to_double();
  if (x < y) return -1;
  if (x > y) return 1;
  if (x == y) return 0;
  // NaN sorts after everything, and equal to itself.
  const bool xn = std::isnan(x);
  const bool yn = std::isnan(y);
  return xn == yn ? 0 : (xn ? 1 : -1);
}

int compare_seq(std::span<const Value> a, std::span<const Value> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a[i], b[i]); c != 0) return c;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

void write_debug(std::ostringstream& os, const Value& v) {
  switch (v.kind()) {
    case Kind::kNone:
      os << "none";
      break;
    case Kind::kBool:
      os << (v.as_bool() ? "true" : "false");
      break;
    case Kind::kInt:
      os << v.as_int();
      break;
    case Kind::kReal:
      os << v.as_real();
      break;
    case Kind::kText:
      os << '"' << v.as_text() << '"';
      break;
    case Kind::kTuple:
    case Kind::kList: {
      const bool tuple = v.kind() == Kind::kTuple;
      os << (tuple ? '(' : '[');
      const auto items = v.items();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) os << ", ";
        write_debug(os, items[i]);
      }
      if (tuple && items.size() == 1) os << ',';
      os << (tuple ? ')' : ']');
      break;
    }
    case Kind::kMap: {
      os << '{';
      bool first = true;
      for (const auto& [k, val] : v.as_map().entries) {
        if (!first) os << ", ";
        first = false;
        write_debug(os, k);
        os << ": ";
        write_debug(os, val);
      }
      os << '}';
      break;
    }
    case Kind::kRecord: {
      const auto& rec = v.as_record();
      os << '{';
      for (std::size_t i = 0; i < rec.values.size(); ++i) {
        if (i) os << ", ";
        os << '.' << symbol_name(rec.shape->fields[i]) << " = ";
        write_debug(os, rec.values[i]);
      }
      os << '}';
      break;
    }
  }
}

}  // namespace

int intern(std::string_view name) {
  auto& table = symbols();
  std::lock_guard lock(table.mu);
  auto it = table.ids.find(std::string(name));
  if (it != table.ids.end()) return it->second;
  const int id = static_cast<int>(table.names.size());
  table.names.emplace_back(name);
  table.ids.emplace(table.names.back(), id);
  return id;
}

const std::string& symbol_name(int id) {
  auto& table = symbols();
  std::lock_guard lock(table.mu);
  return table.names.at(static_cast<std::size_t>(id));
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::kNone: return "none";
    case Kind::kBool: return "boolean";
    case Kind::kInt: return "integer";
    case Kind::kReal: return "real";
    case Kind::kText: return "text";
    case Kind::kTuple: return "tuple";
    case Kind::kList: return "list";
    case Kind::kMap: return "mapping";
    case Kind::kRecord: return "record";
  }
  return "?";
}

const Value* Map::find(const Value& key) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), key,
      [](const auto& entry, const Value& k) { return compare(entry.first, k) < 0; });
  if (it != entries.end() && compare(it->first, key) == 0) return &it->second;
  return nullptr;
}

std::shared_ptr<const RecordShape> RecordShape::make(
    std::initializer_list<std::string_view> names) {
  auto shape = std::make_shared<RecordShape>();
  for (auto n : names) shape->fields.push_back(intern(n));
  return shape;
}

int RecordShape::index_of(int symbol) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i] == symbol) return static_cast<int>(i);
  }
  return -1;
}

const Value* Record::field(int symbol) const {
  const int i = shape->index_of(symbol);
  return i < 0 ? nullptr : &values[static_cast<std::size_t>(i)];
}

Value Value::boolean(bool b) {
  Value v;
  v.data_ = b;
  return v;
}

Value Value::integer(std::int64_t i) {
  Value v;
  v.data_ = i;
  return v;
}

Value Value::real(double r) {
  Value v;
  v.data_ = r;
  return v;
}

Value Value::text(std::string s) {
  Value v;
  v.data_ = std::make_shared<const std::string>(std::move(s));
  return v;
}

Value Value::tuple(std::vector<Value> items) {
  Value v;
  v.data_ = std::make_shared<const Tuple>(Tuple{std::move(items)});
  return v;
}

Value Value::list(std::vector<Value> items) {
  Value v;
  v.data_ = std::make_shared<const List>(List{std::move(items)});
  return v;
}

Value Value::map(std::vector<std::pair<Value, Value>> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  std::vector<std::pair<Value, Value>> unique;
  unique.reserve(entries.size());
  for (auto& e : entries) {
    if (!unique.empty() && compare(unique.back().first, e.first) == 0) {
      unique.back().second = std::move(e.second);
    } else {
      unique.push_back(std::move(e));
    }
  }
  return sorted_map(std::move(unique));
}

Value Value::sorted_map(std::vector<std::pair<Value, Value>> entries) {
  Value v;
  v.data_ = std::make_shared<const Map>(Map{std::move(entries)});
  return v;
}

Value Value::record(std::shared_ptr<const RecordShape> shape,
                    std::vector<Value> values) {
  Value v;
  v.data_ = std::make_shared<const Record>(Record{std::move(shape), std::move(values)});
  return v;
}

double Value::to_double() const {
  if (kind() == Kind::kInt) return static_cast<double>(as_int());
  return as_real();
}

std::span<const Value> Value::items() const {
  if (kind() == Kind::kTuple) return as_tuple().items;
  return as_list().items;
}

int compare(const Value& a, const Value& b) {
  const int ra = kind_rank(a.kind());
  const int rb = kind_rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Kind::kNone:
      return 0;
    case Kind::kBool:
      return static_cast<int>(a.as_bool()) - static_cast<int>(b.as_bool());
    case Kind::kInt:
    case Kind::kReal:
      return compare_numbers(a, b);
    case Kind::kText: {
      const int c = a.as_text().compare(b.as_text());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::kTuple:
    case Kind::kList:
      return compare_seq(a.items(), b.items());
    case Kind::kMap: {
      const auto& x = a.as_map().entries;
      const auto& y = b.as_map().entries;
      const std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(x[i].first, y[i].first); c != 0) return c;
        if (int c = compare(x[i].second, y[i].second); c != 0) return c;
      }
      return x.size() < y.size() ? -1 : (x.size() > y.size() ? 1 : 0);
    }
    case Kind::kRecord: {
      const auto& x = a.as_record();
      const auto& y = b.as_record();
      if (x.shape->fields != y.shape->fields) {
        return x.shape->fields < y.shape->fields ? -1 : 1;
      }
      return compare_seq(x.values, y.values);
    }
  }
  return 0;
}

bool equals(const Value& a, const Value& b) {
  if (a.is_number() && b.is_number()) {
    if (a.kind() == Kind::kInt && b.kind() == Kind::kInt) return a.as_int() == b.as_int();
    return a.to_double() == b.to_double();
  }
  if (a.kind() != b.kind()) return false;
  return compare(a, b) == 0;
}

bool identical(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::kReal:
      return std::bit_cast<std::uint64_t>(a.as_real()) ==
             std::bit_cast<std::uint64_t>(b.as_real());
    case Kind::kTuple:
    case Kind::kList: {
      const auto x = a.items();
      const auto y = b.items();
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!identical(x[i], y[i])) return false;
      }
      return true;
    }
    case Kind::kMap: {
      const auto& x = a.as_map().entries;
      const auto& y = b.as_map().entries;
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!identical(x[i].first, y[i].first) || !identical(x[i].second, y[i].second)) {
          return false;
        }
      }
      return true;
    }
    case Kind::kRecord: {
      const auto& x = a.as_record();
      const auto& y = b.as_record();
      if (x.shape->fields != y.shape->fields) return false;
      for (std::size_t i = 0; i < x.values.size(); ++i) {
        if (!identical(x.values[i], y.values[i])) return false;
      }
      return true;
    }
    default:
      return compare(a, b) == 0;
  }
}

std::string debug_string(const Value& v) {
  std::ostringstream os;
  os.precision(17);
  write_debug(os, v);
  return os.str();
}

}  // namespace hcevo::lang

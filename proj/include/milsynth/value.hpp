#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace mil {

/// Structured ground value: symbol, integer, character, list, or tuple.
/// Values are immutable and cheap to copy (sequence payloads are shared).
class Value {
public:
    enum class Kind : std::uint8_t { Symbol, Int, Char, List, Tuple };

    Value() : Value(symbol("nil")) {}

    static Value symbol(std::string name) {
        Value v(Kind::Symbol);
        v.sym_ = std::move(name);
        v.hash_ = hash_mix(static_cast<std::size_t>(Kind::Symbol),
                           std::hash<std::string>{}(v.sym_));
        return v;
    }

    static Value integer(std::int64_t n) {
        Value v(Kind::Int);
        v.int_ = n;
        v.hash_ = hash_mix(static_cast<std::size_t>(Kind::Int),
                           std::hash<std::int64_t>{}(n));
        return v;
    }

    static Value character(char c) {
        Value v(Kind::Char);
        v.int_ = static_cast<std::int64_t>(c);
        v.hash_ = hash_mix(static_cast<std::size_t>(Kind::Char),
                           std::hash<std::int64_t>{}(v.int_));
        return v;
    }

    static Value list(std::vector<Value> items) { return sequence(Kind::List, std::move(items)); }
    static Value tuple(std::vector<Value> items) { return sequence(Kind::Tuple, std::move(items)); }

    /// Empty list constant.
    static Value nil() { return list({}); }

    Kind kind() const { return kind_; }
    bool is_symbol() const { return kind_ == Kind::Symbol; }
    bool is_int() const { return kind_ == Kind::Int; }
    bool is_char() const { return kind_ == Kind::Char; }
    bool is_list() const { return kind_ == Kind::List; }
    bool is_tuple() const { return kind_ == Kind::Tuple; }

    const std::string& symbol_name() const { return sym_; }
    std::int64_t int_value() const { return int_; }
    char char_value() const { return static_cast<char>(int_); }

    const std::vector<Value>& items() const {
        static const std::vector<Value> empty;
        return items_ ? *items_ : empty;
    }

    std::size_t hash() const { return hash_; }

    bool operator==(const Value& o) const {
        if (hash_ != o.hash_ || kind_ != o.kind_) return false;
        switch (kind_) {
            case Kind::Symbol: return sym_ == o.sym_;
            case Kind::Int:
            case Kind::Char: return int_ == o.int_;
            case Kind::List:
            case Kind::Tuple: return items() == o.items();
        }
        return false;
    }
    bool operator!=(const Value& o) const { return !(*this == o); }

    /// Total order (by kind, then contents); used for deterministic sets.
    bool operator<(const Value& o) const {
        if (kind_ != o.kind_) return kind_ < o.kind_;
        switch (kind_) {
            case Kind::Symbol: return sym_ < o.sym_;
            case Kind::Int:
            case Kind::Char: return int_ < o.int_;
            case Kind::List:
            case Kind::Tuple: return items() < o.items();
        }
        return false;
    }

    /// Canonical surface form ('x' for chars, "[...]"/"(...)" for sequences).
    std::string to_string() const {
        std::ostringstream out;
        write(out);
        return out.str();
    }

    void write(std::ostream& out) const {
        switch (kind_) {
            case Kind::Symbol: out << sym_; break;
            case Kind::Int: out << int_; break;
            case Kind::Char: out << '\'' << static_cast<char>(int_) << '\''; break;
            case Kind::List:
            case Kind::Tuple: {
                out << (kind_ == Kind::List ? '[' : '(');
                const auto& xs = items();
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    if (i > 0) out << ',';
                    xs[i].write(out);
                }
                out << (kind_ == Kind::List ? ']' : ')');
                break;
            }
        }
    }

private:
    explicit Value(Kind k) : kind_(k) {}

    static Value sequence(Kind k, std::vector<Value> items) {
        Value v(k);
        std::size_t h = static_cast<std::size_t>(k) + 0x9e3779b9u;
        for (const auto& item : items) h = hash_mix(h, item.hash());
        h = hash_mix(h, items.size());
        v.items_ = std::make_shared<const std::vector<Value>>(std::move(items));
        v.hash_ = h;
        return v;
    }

    static std::size_t hash_mix(std::size_t a, std::size_t b) {
        a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
        return a;
    }

    Kind kind_;
    std::int64_t int_ = 0;
    std::string sym_;
    std::shared_ptr<const std::vector<Value>> items_;
    std::size_t hash_ = 0;
};

inline std::ostream& operator<<(std::ostream& out, const Value& v) {
    v.write(out);
    return out;
}

}  // namespace mil

template <>
struct std::hash<mil::Value> {
    std::size_t operator()(const mil::Value& v) const { return v.hash(); }
};

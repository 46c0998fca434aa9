#pragma once

// Internal serialization helpers: deterministic document rendering with
// 17-significant-digit numbers (lossless binary64 round trip) and the input
// hash used for report provenance.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "qsd/errors.hpp"

namespace qsd::detail {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw ValidationError("cannot serialize a non-finite number");
  }
  if (v == 0.0) return "0";  // canonicalize the sign of zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void escape_string(const std::string& s, std::string& out) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

inline void dump_value(const ordered_json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::null:
      out += "null";
      break;
    case ordered_json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case ordered_json::value_t::string:
      escape_string(j.get<std::string>(), out);
      break;
    case ordered_json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case ordered_json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      bool scalar_only = true;
      for (const auto& el : j) {
        scalar_only = scalar_only && !el.is_structured();
      }
      if (scalar_only) {
        out.push_back('[');
        bool first = true;
        for (const auto& el : j) {
          if (!first) out += ", ";
          first = false;
          dump_value(el, out, indent);
        }
        out.push_back(']');
      } else {
        out += "[\n";
        bool first = true;
        for (const auto& el : j) {
          if (!first) out += ",\n";
          first = false;
          out += pad_in;
          dump_value(el, out, indent + 1);
        }
        out.push_back('\n');
        out += pad;
        out.push_back(']');
      }
      break;
    }
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        escape_string(it.key(), out);
        out += ": ";
        dump_value(it.value(), out, indent + 1);
      }
      out.push_back('\n');
      out += pad;
      out.push_back('}');
      break;
    }
    default:
      throw ValidationError("cannot serialize this value type");
  }
}

inline std::string dump_json(const ordered_json& j) {
  std::string out;
  dump_value(j, out, 0);
  out.push_back('\n');
  return out;
}

inline std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qsd::detail

#pragma once

#include <string>
#include <vector>

namespace epilab {

/// Minimal deterministic JSON emitter. Doubles are written with 17
/// significant digits (%.16e) so serialized values round-trip exactly and
/// reports are byte-stable across runs. Non-finite doubles are written as
/// the strings "inf", "-inf", "nan" (JSON has no literals for them).
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& number(double v);
  JsonWriter& integer(long long v);
  JsonWriter& string(const std::string& s);
  JsonWriter& boolean(bool b);
  const std::string& str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<bool> first_;   // per nesting level
  bool pending_key_ = false;
};

/// 17-significant-digit decimal form of a double ("%.16e"; inf/nan spelled out).
std::string format_double(double v);

std::string json_escape(const std::string& s);

/// Writes via a temp file in the same directory, then renames; removes the
/// temp file if the write fails so no partial reports are left behind.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace epilab

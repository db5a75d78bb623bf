#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace corners {

// 17 significant digits: round-trip exact for doubles and byte-stable across
// runs. Non-finite values render as "inf"/"-inf"/"nan".
std::string fmt17(double v);

std::string int128_to_string(__int128 v);

// Minimal deterministic JSON emitter (insertion order preserved; doubles via
// fmt17, non-finite doubles as strings).
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  std::string str() const { return out_; }

 private:
  void separate();
  std::string out_;
  std::vector<bool> has_item_;  // per open scope
  bool pending_key_ = false;
};

std::string json_escape(std::string_view s);

// Writes `text` to `path`, or to stdout when path is empty. I/O failures are
// reported with the path in the message.
void write_text(const std::string& path, const std::string& text);

}  // namespace corners

#pragma once

#include <string>

#include "rainskit/channels.hpp"
#include "rainskit/complex_matrix.hpp"

namespace rainskit {

/// Channel spec: {"kind":"kraus"|"choi", "dim_in":int, "dim_out":int,
/// "data":...} with row-major complex entries as [re, im] pairs; for
/// kind "choi" data is one matrix, for kind "kraus" a list of matrices
/// (a single matrix is accepted as a one-element list).
Channel parse_channel_json(const std::string& text);

/// State spec: {"dims":[...], "matrix":[[[re,im],...],...]}.
BipartiteState parse_state_json(const std::string& text);

Channel load_channel_file(const std::string& path);
BipartiteState load_state_file(const std::string& path);

/// All reals in emitted reports are printed with 12 significant digits.
std::string format_real(double v);

/// Minimal deterministic JSON emitter: fixed key order, no whitespace
/// variation, reals through format_real.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& begin_object_field(const std::string& key);
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& begin_object_in_array();
    JsonWriter& end_array();
    JsonWriter& field(const std::string& key, double v);
    JsonWriter& field(const std::string& key, long v);
    JsonWriter& field(const std::string& key, int v) { return field(key, static_cast<long>(v)); }
    JsonWriter& field(const std::string& key, bool v);
    JsonWriter& field(const std::string& key, const std::string& v);
    JsonWriter& field_interval(const std::string& key, double lo, double hi);
    JsonWriter& array_value(double v);
    std::string str() const { return out_; }

private:
    void comma();
    std::string out_;
    bool need_comma_ = false;
};

}  // namespace rainskit

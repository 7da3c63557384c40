#include "rainskit/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rainskit {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.what() carries the byte position diagnostic.
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }
}

cplx parse_entry(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("JSON matrix entry must be a [re, im] pair");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

ComplexMatrix parse_matrix(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("JSON matrix must be a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    if (cols == 0) throw std::invalid_argument("JSON matrix row is empty");
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("JSON matrix rows have inconsistent lengths");
        for (int k = 0; k < cols; ++k) m(i, k) = parse_entry(row[static_cast<size_t>(k)]);
    }
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Channel parse_channel_json(const std::string& text) {
    const json j = parse_or_throw(text);
    if (!j.is_object()) throw std::invalid_argument("channel JSON must be an object");
    for (const char* key : {"kind", "dim_in", "dim_out", "data"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("channel JSON missing \"") + key + "\"");
    const std::string kind = j["kind"].get<std::string>();
    const int dim_in = j["dim_in"].get<int>();
    const int dim_out = j["dim_out"].get<int>();
    if (dim_in < 1 || dim_out < 1) throw std::invalid_argument("channel JSON: dims must be positive");

    if (kind == "choi") return Channel::from_choi(dim_in, dim_out, parse_matrix(j["data"]));
    if (kind == "kraus") {
        const json& data = j["data"];
        if (!data.is_array() || data.empty()) throw std::invalid_argument("channel JSON: empty data");
        std::vector<ComplexMatrix> ks;
        if (data[0].is_array() && !data[0].empty() && data[0][0].is_array() && !data[0][0].empty() &&
            data[0][0][0].is_array()) {
            for (const auto& km : data) ks.push_back(parse_matrix(km));  // list of matrices
        } else {
            ks.push_back(parse_matrix(data));  // single matrix
        }
        return Channel::from_kraus(dim_in, dim_out, std::move(ks));
    }
    throw std::invalid_argument("channel JSON: kind must be \"kraus\" or \"choi\"");
}

BipartiteState parse_state_json(const std::string& text) {
    const json j = parse_or_throw(text);
    if (!j.is_object()) throw std::invalid_argument("state JSON must be an object");
    if (!j.contains("dims") || !j.contains("matrix"))
        throw std::invalid_argument("state JSON must carry \"dims\" and \"matrix\"");
    std::vector<int> factors;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw std::invalid_argument("state JSON: dims must be positive integers");
        factors.push_back(d.get<int>());
    }
    return BipartiteState::make(parse_matrix(j["matrix"]), DimSpec{factors});
}

Channel load_channel_file(const std::string& path) { return parse_channel_json(read_file(path)); }

BipartiteState load_state_file(const std::string& path) { return parse_state_json(read_file(path)); }

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void JsonWriter::comma() {
    if (need_comma_) out_ += ",";
    need_comma_ = false;
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += "{";
    need_comma_ = false;
    return *this;
}

JsonWriter& JsonWriter::begin_object_field(const std::string& key) {
    comma();
    out_ += "\"" + key + "\":{";
    need_comma_ = false;
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += "}";
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    comma();
    out_ += "\"" + key + "\":[";
    need_comma_ = false;
    return *this;
}

JsonWriter& JsonWriter::begin_object_in_array() {
    comma();
    out_ += "{";
    need_comma_ = false;
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += "]";
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, double v) {
    comma();
    out_ += "\"" + key + "\":" + format_real(v);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, long v) {
    comma();
    out_ += "\"" + key + "\":" + std::to_string(v);
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool v) {
    comma();
    out_ += "\"" + key + "\":" + (v ? "true" : "false");
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& v) {
    comma();
    out_ += "\"" + key + "\":\"" + v + "\"";
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::field_interval(const std::string& key, double lo, double hi) {
    comma();
    out_ += "\"" + key + "\":[" + format_real(lo) + "," + format_real(hi) + "]";
    need_comma_ = true;
    return *this;
}

JsonWriter& JsonWriter::array_value(double v) {
    comma();
    out_ += format_real(v);
    need_comma_ = true;
    return *this;
}

}  // namespace rainskit

#include "unital/json_io.hpp"

#include <cmath>
#include <vector>

#include "unital/errors.hpp"

namespace unital {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ParseError, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing key \"") + key + "\"");
    return *it;
}

double real_at(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(path, "non-finite value");
    return x;
}

Complex complex_at(const Json& j, const std::string& path) {
    if (j.is_number()) return real_at(j, path);
    if (!j.is_array() || j.size() != 2) fail(path, "expected a complex number [re, im]");
    return {real_at(j[0], path + "/0"), real_at(j[1], path + "/1")};
}

void require_array(const Json& j, std::size_t n, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of length " + std::to_string(n));
    if (j.size() != n) fail(path, "expected length " + std::to_string(n) + ", got " + std::to_string(j.size()));
}

template <std::size_t N>
Matrix<Complex, N> complex_matrix_at(const Json& j, const std::string& path) {
    require_array(j, N, path);
    Matrix<Complex, N> m;
    for (std::size_t r = 0; r < N; ++r) {
        const std::string row = path + "/" + std::to_string(r);
        require_array(j[r], N, row);
        for (std::size_t c = 0; c < N; ++c) m(r, c) = complex_at(j[r][c], row + "/" + std::to_string(c));
    }
    return m;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

template <std::size_t N>
Json complex_matrix_json(const Matrix<Complex, N>& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < N; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < N; ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

ComplexMatrix2 matrix2_from_json(const Json& j, const std::string& path) { return complex_matrix_at<2>(j, path); }

QubitChannel channel_from_json(const Json& doc) {
    const Json& kind_node = member(doc, "kind", "");
    if (!kind_node.is_string()) fail("/kind", "expected a string");
    const std::string kind = kind_node.get<std::string>();
    const Json& data = member(doc, "data", "");

    if (kind == "kraus") {
        if (!data.is_array() || data.empty() || data.size() > 16) fail("/data", "expected 1 to 16 Kraus operators");
        std::vector<ComplexMatrix2> ops;
        for (std::size_t k = 0; k < data.size(); ++k) ops.push_back(complex_matrix_at<2>(data[k], "/data/" + std::to_string(k)));
        return KrausForm(std::move(ops));
    }
    if (kind == "choi") return ChoiForm{complex_matrix_at<4>(data, "/data")};
    if (kind == "pauli") {
        require_array(data, 4, "/data");
        PauliMixingForm p;
        for (std::size_t k = 0; k < 4; ++k) p.coefficients[k] = real_at(data[k], "/data/" + std::to_string(k));
        return p;
    }
    if (kind == "bloch") {
        const Json& linear = member(data, "linear", "/data");
        const Json& offset = member(data, "offset", "/data");
        BlochAffineForm b;
        require_array(linear, 3, "/data/linear");
        for (std::size_t r = 0; r < 3; ++r) {
            const std::string row = "/data/linear/" + std::to_string(r);
            require_array(linear[r], 3, row);
            for (std::size_t c = 0; c < 3; ++c) b.linear(r, c) = real_at(linear[r][c], row + "/" + std::to_string(c));
        }
        require_array(offset, 3, "/data/offset");
        for (std::size_t i = 0; i < 3; ++i) b.offset[i] = real_at(offset[i], "/data/offset/" + std::to_string(i));
        return b;
    }
    fail("/kind", "unknown kind \"" + kind + "\" (expected kraus, choi, pauli or bloch)");
}

QubitChannel parse_channel(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "at byte " + std::to_string(e.byte) + ": malformed JSON");
    } catch (const nlohmann::json::out_of_range&) {
        throw Error(ErrorCode::ParseError, "number out of range (non-finite value)");
    }
    return channel_from_json(doc);
}

Json matrix_to_json(const ComplexMatrix2& m) { return complex_matrix_json(m); }
Json matrix_to_json(const ComplexMatrix4& m) { return complex_matrix_json(m); }

Json matrix_to_json(const RealMatrix3& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < 3; ++r) rows.push_back(Json::array({m(r, 0), m(r, 1), m(r, 2)}));
    return rows;
}

Json channel_to_json(const QubitChannel& ch) {
    Json doc;
    if (const auto* k = ch.get_if<KrausForm>()) {
        doc["kind"] = "kraus";
        Json ops = Json::array();
        for (const auto& f : k->operators()) ops.push_back(matrix_to_json(f));
        doc["data"] = std::move(ops);
    } else if (const auto* c = ch.get_if<ChoiForm>()) {
        doc["kind"] = "choi";
        doc["data"] = matrix_to_json(c->matrix);
    } else if (const auto* p = ch.get_if<PauliMixingForm>()) {
        doc["kind"] = "pauli";
        doc["data"] = p->coefficients;
    } else {
        const auto* b = ch.get_if<BlochAffineForm>();
        doc["kind"] = "bloch";
        doc["data"] = {{"linear", matrix_to_json(b->linear)}, {"offset", b->offset}};
    }
    return doc;
}

std::string dump_channel(const QubitChannel& ch) { return channel_to_json(ch).dump(); }

Json to_json(const Canonicalization& c) {
    Json doc;
    doc["u"] = matrix_to_json(c.u);
    doc["v"] = matrix_to_json(c.v);
    doc["spectrum"] = c.spectrum.lambdas;
    doc["canonical"] = {{"kind", "pauli"}, {"data", c.canonical.coefficients}};
    doc["residual"] = c.residual;
    return doc;
}

Json to_json(const UnitaryDecomposition& d, double residual) {
    Json doc;
    doc["weights"] = d.weights.weights;
    Json us = Json::array();
    for (const auto& u : d.unitaries) us.push_back(matrix_to_json(u));
    doc["unitaries"] = std::move(us);
    doc["residual"] = residual;
    return doc;
}

Json to_json(const BlochScaling& s) { return s.d; }

Json to_json(const EquivalenceResult& e) {
    Json doc;
    doc["equivalent"] = e.equivalent;
    doc["spectral_gap"] = e.spectral_gap;
    if (e.equivalent) {
        doc["u"] = matrix_to_json(e.u);
        doc["v"] = matrix_to_json(e.v);
        doc["witness_residual"] = e.witness_residual;
    }
    return doc;
}

}  // namespace unital

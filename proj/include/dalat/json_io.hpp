#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "dalat/lattice.hpp"
#include "dalat/realization.hpp"
#include "dalat/schur.hpp"
#include "dalat/series.hpp"

namespace dalat {
namespace io {

using json = nlohmann::json;

template <class T>
constexpr const char* mode_name()
{
    return ScalarTraits<T>::exact ? "exact" : "float";
}

inline std::string mode_of(const json& j)
{
    if (!j.contains("mode")) throw std::invalid_argument("json: missing \"mode\" field");
    std::string m = j.at("mode").get<std::string>();
    if (m != "exact" && m != "float")
        throw std::invalid_argument("json: mode must be \"exact\" or \"float\"");
    return m;
}

// scalars serialize as [re, im]: "p/q" strings in exact mode, numbers in
// float mode

inline json scalar_to_json(const GaussianRational& v)
{
    return json::array({to_string(v.real()), to_string(v.imag())});
}

inline json scalar_to_json(const std::complex<double>& v)
{
    return json::array({v.real(), v.imag()});
}

template <class T>
T scalar_from_json(const json& j);

template <>
inline GaussianRational scalar_from_json<GaussianRational>(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("json: scalar must be a [re, im] pair");
    auto part = [](const json& p) {
        if (p.is_string()) return parse_rational(p.get<std::string>());
        return parse_rational(p.dump());
    };
    return {part(j[0]), part(j[1])};
}

template <>
inline std::complex<double> scalar_from_json<std::complex<double>>(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("json: scalar must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class T>
json matrix_to_json(const Matrix<T>& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class T>
Matrix<T> matrix_from_json(const json& j, std::size_t rows, std::size_t cols)
{
    if (!j.is_array() || j.size() != rows)
        throw std::invalid_argument("json: matrix row count mismatch");
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw std::invalid_argument("json: matrix column count mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json<T>(row[c]);
    }
    return m;
}

// ---------------------------------------------------------------------------
// LatticeFunction: {window:{x0,x1,y0,y1}, rows, cols, mode,
//                   values:[{x, y, re:[...], im:[...]}, ...]}
// with re/im the row-major flattened parts, strings in exact mode.

template <class T>
json to_json(const LatticeFunction<T>& f)
{
    const Window w = f.window();
    json out;
    out["window"] = {{"x0", w.x0}, {"x1", w.x1}, {"y0", w.y0}, {"y1", w.y1}};
    out["rows"] = f.rows();
    out["cols"] = f.cols();
    out["mode"] = mode_name<T>();
    json values = json::array();
    for (int y = w.y0; y <= w.y1; ++y)
        for (int x = w.x0; x <= w.x1; ++x) {
            const Matrix<T>& m = f.at({x, y});
            json re = json::array(), im = json::array();
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    if constexpr (ScalarTraits<T>::exact) {
                        re.push_back(to_string(m(i, j).real()));
                        im.push_back(to_string(m(i, j).imag()));
                    } else {
                        re.push_back(m(i, j).real());
                        im.push_back(m(i, j).imag());
                    }
                }
            values.push_back({{"x", x}, {"y", y}, {"re", std::move(re)}, {"im", std::move(im)}});
        }
    out["values"] = std::move(values);
    return out;
}

template <class T>
LatticeFunction<T> lattice_function_from_json(const json& j)
{
    if (mode_of(j) != mode_name<T>())
        throw std::invalid_argument("json: document mode does not match the requested mode");
    const json& wj = j.at("window");
    Window w{wj.at("x0").get<int>(), wj.at("x1").get<int>(), wj.at("y0").get<int>(),
             wj.at("y1").get<int>()};
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    LatticeFunction<T> f(w, rows, cols);

    auto entry = [](const json& part, std::size_t k) {
        if constexpr (ScalarTraits<T>::exact)
            return parse_rational(part.at(k).template get<std::string>());
        else
            return part.at(k).template get<double>();
    };

    std::size_t expected = static_cast<std::size_t>(w.size());
    if (j.at("values").size() != expected)
        throw std::invalid_argument("json: value count does not cover the window");
    for (const json& v : j.at("values")) {
        LatticePoint p{v.at("x").get<int>(), v.at("y").get<int>()};
        const json& re = v.at("re");
        const json& im = v.at("im");
        if (re.size() != rows * cols || im.size() != rows * cols)
            throw std::invalid_argument("json: value shape mismatch");
        Matrix<T> m(rows, cols);
        std::size_t k = 0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t c = 0; c < cols; ++c, ++k) {
                if constexpr (ScalarTraits<T>::exact)
                    m(i, c) = GaussianRational(entry(re, k), entry(im, k));
                else
                    m(i, c) = std::complex<double>(entry(re, k), entry(im, k));
            }
        f.at(p) = std::move(m);
    }
    return f;
}

// ---------------------------------------------------------------------------
// CoefficientSeries: {rows, cols, mode, coeffs:[matrix, ...]}

template <class T>
json to_json(const CoefficientSeries<T>& s)
{
    json out;
    out["rows"] = s.rows;
    out["cols"] = s.cols;
    out["mode"] = mode_name<T>();
    json coeffs = json::array();
    for (const auto& m : s.coeffs) coeffs.push_back(matrix_to_json(m));
    out["coeffs"] = std::move(coeffs);
    return out;
}

template <class T>
CoefficientSeries<T> series_from_json(const json& j)
{
    if (mode_of(j) != mode_name<T>())
        throw std::invalid_argument("json: document mode does not match the requested mode");
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const json& coeffs = j.at("coeffs");
    CoefficientSeries<T> s(rows, cols, coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        s.coeffs[n] = matrix_from_json<T>(coeffs[n], rows, cols);
    return s;
}

// ---------------------------------------------------------------------------
// Realization: {n, m, p, A, B, C, D, mode}; Colligation adds
// {coisometry_tol, seed?}.

template <class T>
json to_json(const Realization<T>& r)
{
    json out;
    out["n"] = r.state_dim();
    out["m"] = r.out_dim();
    out["p"] = r.in_dim();
    out["A"] = matrix_to_json(r.A);
    out["B"] = matrix_to_json(r.B);
    out["C"] = matrix_to_json(r.C);
    out["D"] = matrix_to_json(r.D);
    out["mode"] = mode_name<T>();
    return out;
}

template <class T>
Realization<T> realization_from_json(const json& j)
{
    if (mode_of(j) != mode_name<T>())
        throw std::invalid_argument("json: document mode does not match the requested mode");
    std::size_t n = j.at("n").get<std::size_t>();
    std::size_t m = j.at("m").get<std::size_t>();
    std::size_t p = j.at("p").get<std::size_t>();
    return Realization<T>(matrix_from_json<T>(j.at("A"), n, n),
                          matrix_from_json<T>(j.at("B"), n, p),
                          matrix_from_json<T>(j.at("C"), m, n),
                          matrix_from_json<T>(j.at("D"), m, p));
}

template <class T>
json to_json(const Colligation<T>& cg)
{
    json out = to_json(Realization<T>(cg.A, cg.B, cg.C, cg.D));
    out["coisometry_tol"] = cg.coisometry_tol;
    if (cg.seed) out["seed"] = *cg.seed;
    return out;
}

template <class T>
Colligation<T> colligation_from_json(const json& j)
{
    Realization<T> r = realization_from_json<T>(j);
    Colligation<T> cg(r.A, r.B, r.C, r.D,
                      j.value("coisometry_tol", 1e-10));
    if (j.contains("seed")) cg.seed = j.at("seed").get<std::uint64_t>();
    return cg;
}

// ---------------------------------------------------------------------------
// CSV: basis tables with columns x,y,n,re,im.

template <class T>
void write_basis_csv(std::ostream& os, std::size_t n_max, Window w)
{
    os << "x,y,n,re,im\n";
    for (int y = w.y0; y <= w.y1; ++y)
        for (int x = w.x0; x <= w.x1; ++x) {
            auto pre = basis_prefix<T>(n_max, {x, y});
            for (std::size_t n = 0; n <= n_max; ++n) {
                os << x << ',' << y << ',' << n << ',';
                if constexpr (ScalarTraits<T>::exact)
                    os << to_string(pre[n].real()) << ',' << to_string(pre[n].imag());
                else {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g", pre[n].real(),
                                  pre[n].imag());
                    os << buf;
                }
                os << '\n';
            }
        }
}

} // namespace io
} // namespace dalat

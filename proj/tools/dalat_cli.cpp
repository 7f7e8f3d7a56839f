// Command-line front end: evaluation, verification suites, table and report
// emission. See README.md for the JSON and CSV schemas.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dalat/dalat.hpp"

namespace {

using namespace dalat;
using dalat::io::json;

using GR = GaussianRational;
using CD = std::complex<double>;

enum class Mode { exact, floating };

struct DomainError : std::runtime_error {
    std::string witness;
    DomainError(const std::string& msg, std::string wit = "")
        : std::runtime_error(msg), witness(std::move(wit)) {}
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Mode parse_mode(const std::string& value)
{
    if (value == "exact") return Mode::exact;
    if (value == "float") return Mode::floating;
    throw UsageError("mode must be 'exact' or 'float', got '" + value + "'");
}

Mode default_mode()
{
    if (const char* env = std::getenv("DALAT_MODE")) return parse_mode(env);
    return Mode::exact;
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

LatticePoint parse_point(const std::string& s)
{
    GR g = parse_gaussian(s);
    if (denominator(g.real()) != 1 || denominator(g.imag()) != 1)
        throw UsageError("lattice point must have integer parts: '" + s + "'");
    LatticePoint p{static_cast<int>(numerator(g.real()).convert_to<long>()),
                   static_cast<int>(numerator(g.imag()).convert_to<long>())};
    return p;
}

Window parse_window(const std::string& s)
{
    std::vector<int> vals;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stoi(item));
    if (vals.size() != 4) throw UsageError("window must be x0,x1,y0,y1");
    Window w{vals[0], vals[1], vals[2], vals[3]};
    if (!w.valid()) throw UsageError("window is empty");
    return w;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("malformed JSON in '" + path + "': " + std::string(e.what()));
    }
    return j;
}

struct Output {
    std::string path;  // empty = stdout

    void write(const std::string& text) const
    {
        if (path.empty()) {
            std::cout << text;
            if (text.empty() || text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream out(path);
        if (!out) throw UsageError("cannot open output file '" + path + "'");
        out << text;
        if (text.empty() || text.back() != '\n') out << '\n';
    }

    void write_json(const json& j) const { write(j.dump(2)); }
};

template <class T>
std::string scalar_text(const T& v)
{
    if constexpr (ScalarTraits<T>::exact)
        return to_string(v);
    else {
        std::string s = format_double(v.real());
        if (v.imag() != 0) {
            if (v.imag() > 0) s += "+";
            s += format_double(v.imag()) + "i";
        }
        return s;
    }
}

template <class T>
std::string matrix_text(const Matrix<T>& m)
{
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += " ";
            s += scalar_text(m(i, j));
        }
        s += "\n";
    }
    if (m.rows() == 0) s = "(empty)\n";
    return s;
}

// builds one of the named sample functions on the window
template <class T>
LatticeFunction<T> builtin_function(const std::string& name, Window w)
{
    using ST = ScalarTraits<T>;
    if (name == "const1")
        return LatticeFunction<T>::tabulate_scalar(w, [](LatticePoint) {
            return ScalarTraits<T>::one();
        });
    if (name == "z")
        return LatticeFunction<T>::tabulate_scalar(w, [](LatticePoint p) {
            return ST::from_int(p.x) + ST::imag_unit() * ST::from_int(p.y);
        });
    if (name == "rez")
        return LatticeFunction<T>::tabulate_scalar(w, [](LatticePoint p) {
            return ScalarTraits<T>::from_int(p.x);
        });
    if (name.rfind("basis", 0) == 0) {
        std::size_t n = std::stoul(name.substr(5));
        return basis_table<T>(n, w);
    }
    throw UsageError("unknown function '" + name +
                     "' (expected const1, z, rez or basis<k>)");
}

// ---------------------------------------------------------------------------
// subcommand bodies, templated over the scalar mode

struct CommonArgs {
    Mode mode = Mode::exact;
    bool as_json = false;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    Output out;
};

template <class T>
int run_basis(const CommonArgs& args, std::size_t n, const std::string& z_str,
              const std::string& window_str, bool csv)
{
    if (csv) {
        Window w = window_str.empty() ? Window::sized(6, 7) : parse_window(window_str);
        std::ostringstream os;
        io::write_basis_csv<T>(os, n, w);
        args.out.write(os.str());
        return 0;
    }
    if (z_str.empty()) throw UsageError("basis: need --z (or --csv with --window)");
    LatticePoint z = parse_point(z_str);
    if (z.x < 0) throw DomainError("point outside the half-lattice", z_str);
    T value = basis_poly<T>(n, z);
    if (args.as_json)
        args.out.write_json(
            {{"n", n}, {"z", to_string(z)}, {"value", io::scalar_to_json(value)},
             {"mode", io::mode_name<T>()}});
    else
        args.out.write(scalar_text(value));
    return 0;
}

template <class T>
int run_eval(const CommonArgs& args, const std::string& in_path, const std::string& z_str)
{
    auto r = io::realization_from_json<T>(load_json(in_path));
    LatticePoint z = parse_point(z_str);
    auto adm = check_admissible(r.A);
    if (!adm.admissible) throw DomainError("inadmissible state matrix", adm.witness);
    Matrix<T> value = rational_eval(r, z);
    if (args.as_json)
        args.out.write_json({{"z", to_string(z)},
                             {"value", io::matrix_to_json(value)},
                             {"mode", io::mode_name<T>()}});
    else
        args.out.write(matrix_text(value));
    return 0;
}

template <class T>
int run_check_analytic(const CommonArgs& args, const std::string& fn,
                       const std::string& in_path, const std::string& window_str)
{
    LatticeFunction<T> f = [&] {
        if (!in_path.empty()) return io::lattice_function_from_json<T>(load_json(in_path));
        Window w = window_str.empty() ? Window::sized(6, 7) : parse_window(window_str);
        return builtin_function<T>(fn.empty() ? "const1" : fn, w);
    }();
    double tol = ScalarTraits<T>::exact && args.tol == 1e-9 ? 0.0 : args.tol;
    auto rep = is_discrete_analytic(f, tol);
    if (args.as_json)
        args.out.write_json({{"analytic", rep.analytic},
                             {"max_residual", rep.max_residual},
                             {"tol", tol},
                             {"mode", io::mode_name<T>()}});
    else
        args.out.write(std::string(rep.analytic ? "analytic" : "not analytic") +
                       " (max residual " + format_double(rep.max_residual) + ")");
    return rep.analytic ? 0 : 1;
}

template <class T>
int run_integrate(const CommonArgs& args, const std::string& fn, const std::string& in_path,
                  const std::string& path_str, const std::string& window_str)
{
    PathSpec path;
    for (const auto& tok : split_list(path_str)) path.vertices.push_back(parse_point(tok));
    if (path.vertices.size() < 2) throw UsageError("integrate: path needs at least two points");
    try {
        path.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    LatticeFunction<T> f = [&] {
        if (!in_path.empty()) return io::lattice_function_from_json<T>(load_json(in_path));
        Window w = window_str.empty() ? Window::sized(6, 7) : parse_window(window_str);
        return builtin_function<T>(fn.empty() ? "const1" : fn, w);
    }();

    Matrix<T> value;
    try {
        value = discrete_integral(f, path);
    } catch (const std::invalid_argument& e) {
        throw DomainError(e.what(), path_str);
    }
    if (args.as_json)
        args.out.write_json({{"value", io::matrix_to_json(value)},
                             {"closed", path.closed()},
                             {"mode", io::mode_name<T>()}});
    else
        args.out.write(matrix_text(value));
    return 0;
}

template <class T>
int run_tmap(const CommonArgs& args, const std::string& in_path, const std::string& t_str)
{
    auto r = io::realization_from_json<T>(load_json(in_path));
    T t;
    if constexpr (ScalarTraits<T>::exact)
        t = parse_gaussian(t_str);
    else
        t = parse_gaussian(t_str).to_complex();
    Matrix<T> value;
    try {
        value = transfer_eval(r, t);
    } catch (const std::domain_error& e) {
        throw DomainError(e.what(), t_str);
    }
    if (args.as_json)
        args.out.write_json({{"t", t_str}, {"value", io::matrix_to_json(value)},
                             {"mode", io::mode_name<T>()}});
    else
        args.out.write(matrix_text(value));
    return 0;
}

template <class T>
int run_product(const CommonArgs& args, const std::string& lhs_path,
                const std::string& rhs_path)
{
    auto f2 = io::realization_from_json<T>(load_json(lhs_path));
    auto f1 = io::realization_from_json<T>(load_json(rhs_path));
    Realization<T> prod;
    try {
        prod = combine(Combine::product, f2, f1);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    args.out.write_json(io::to_json(prod));
    return 0;
}

template <class T>
int run_invert(const CommonArgs& args, const std::string& in_path)
{
    auto r = io::realization_from_json<T>(load_json(in_path));
    Realization<T> inv;
    try {
        inv = invert(r);
    } catch (const std::domain_error& e) {
        throw DomainError(e.what());
    }
    args.out.write_json(io::to_json(inv));
    return 0;
}

template <class T>
int run_degree(const CommonArgs& args, const std::string& w_str, const std::string& in_path,
               std::size_t k_markov)
{
    std::size_t degree = 0;
    if (!w_str.empty()) {
        LatticePoint w = parse_point(w_str);
        if (w.x < 0) throw DomainError("point outside the half-lattice", w_str);
        auto kr = kernel_realization<T>(w);
        std::size_t bound = static_cast<std::size_t>(w.x + std::abs(w.y));
        degree = minimal_realization(markov_params(kr, 2 * bound + 1), args.tol).degree;
    } else {
        auto r = io::realization_from_json<T>(load_json(in_path));
        std::size_t k = k_markov ? k_markov : 2 * r.state_dim() + 1;
        try {
            degree = minimal_realization(markov_params(r, k), args.tol).degree;
        } catch (const std::domain_error& e) {
            throw DomainError(e.what());
        }
    }
    if (args.as_json)
        args.out.write_json({{"degree", degree}, {"mode", io::mode_name<T>()}});
    else
        args.out.write(std::to_string(degree));
    return 0;
}

template <class T>
int run_annihilate(const CommonArgs& args, const std::string& in_path)
{
    auto r = io::realization_from_json<T>(load_json(in_path));
    CoefficientSeries<T> p;
    try {
        p = annihilating_polynomial(r);
    } catch (const std::domain_error& e) {
        throw DomainError(e.what());
    }
    args.out.write_json(io::to_json(p));
    return 0;
}

int run_schur_check(const CommonArgs& args, const std::string& dims_str,
                    const std::string& points_path, std::size_t series_terms)
{
    auto dims = split_list(dims_str);
    if (dims.size() != 3) throw UsageError("schur-check: --dims must be n,m,p");
    std::size_t n = std::stoul(dims[0]), m = std::stoul(dims[1]), p = std::stoul(dims[2]);

    Colligation<CD> cg;
    try {
        cg = random_coisometry(n, m, p, args.seed);
    } catch (const std::domain_error& e) {
        throw DomainError(e.what(), dims_str);
    }

    std::vector<LatticePoint> points;
    if (!points_path.empty()) {
        json pj = load_json(points_path);
        for (const auto& item : pj) {
            if (item.is_array() && item.size() == 2)
                points.push_back({item[0].get<int>(), item[1].get<int>()});
            else if (item.is_object())
                points.push_back({item.at("x").get<int>(), item.at("y").get<int>()});
            else
                throw UsageError("points file entries must be [x,y] or {x,y}");
        }
    } else {
        for (int k = 0; k < 30; ++k) points.push_back({k % 6, (k / 6) % 11 - 5});
    }
    if (points.empty()) throw UsageError("schur-check: no points given");
    for (const auto& pt : points)
        if (pt.x < 0) throw DomainError("point outside the half-lattice");

    auto kois = is_coisometry(cg.block(), cg.coisometry_tol);
    auto gram = gram_psd(cg, points, args.tol);
    auto mult = multiplier_contraction(cg, 64);
    LatticePoint z = points[0], w = points[points.size() / 2];
    auto series = kernel_series(cg, z, w, series_terms, 1e-6, 160);
    double match_err =
        std::sqrt((series.value - kernel_closed(cg, z, w)).frobenius_sq());

    json report{{"seed", args.seed},
                {"dims", {{"n", n}, {"m", m}, {"p", p}}},
                {"coisometric", kois.coisometric},
                {"defect_norm", kois.defect_norm},
                {"psd", gram.psd},
                {"min_eig", gram.min_eig},
                {"opnorm", mult.opnorm},
                {"kernel_match_err", match_err},
                {"points_used", points.size()},
                {"mode", "float"}};
    args.out.write_json(report);

    if (!kois.coisometric) return 1;
    if (!gram.psd || !mult.contractive) return 1;
    return 0;
}

int run_mesh_converge(const CommonArgs& args, std::size_t n, const std::string& x_str,
                      const std::string& h_list)
{
    Rational x = parse_rational(x_str);
    if (x < 0) throw DomainError("mesh-converge: x must lie on the right half-axis", x_str);
    Rational limit = 1;
    for (std::size_t j = 0; j < n; ++j) limit *= x;
    for (std::size_t j = 2; j <= n; ++j) limit /= static_cast<long>(j);

    std::ostringstream os;
    os << "h,value,limit,abs_err\n";
    for (const auto& tok : split_list(h_list)) {
        Rational h = parse_rational(tok);
        long idx;
        try {
            idx = mesh::mesh_index(x, h);
        } catch (const std::domain_error& e) {
            throw DomainError(e.what(), tok);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        GR val = mesh::basis_poly_h<GR>(n, {idx, 0, h});
        Rational err = abs(val.real() - limit);
        if (args.mode == Mode::exact)
            os << to_string(h) << ',' << to_string(val.real()) << ','
               << to_string(limit) << ',' << to_string(err) << '\n';
        else
            os << format_double(to_double(h)) << ',' << format_double(to_double(val.real()))
               << ',' << format_double(to_double(limit)) << ','
               << format_double(to_double(err)) << '\n';
    }
    args.out.write(os.str());
    return 0;
}

int run_verify_all(const CommonArgs& args, const std::string& profile_str)
{
    verify::Profile profile;
    if (profile_str == "quick")
        profile = verify::Profile::quick;
    else if (profile_str == "full")
        profile = verify::Profile::full;
    else
        throw UsageError("verify-all: profile must be 'quick' or 'full'");

    auto results = verify::run_all(profile);
    json checks = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        checks.push_back({{"name", r.name},
                          {"pass", r.pass},
                          {"residual", r.residual},
                          {"detail", r.detail}});
        all_pass = all_pass && r.pass;
    }
    args.out.write_json({{"profile", profile_str},
                         {"all_pass", all_pass},
                         {"checks", checks}});
    return 0;  // failures are data
}

template <class F>
int dispatch_mode(Mode mode, F&& f)
{
    if (mode == Mode::exact) return f(GaussianRational{});
    return f(CD{});
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"discrete analytic lattice toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // accept global flags after the subcommand too

    CommonArgs args;
    std::string mode_str;
    app.add_option("--mode", mode_str, "scalar mode: exact | float (default from DALAT_MODE)");
    app.add_flag("--json", args.as_json, "emit machine-readable JSON");
    app.add_option("--tol", args.tol, "tolerance for floating-point checks");
    app.add_option("--seed", args.seed, "seed for generated test data");
    app.add_option("--out", args.out.path, "write output to a file instead of stdout");

    std::size_t basis_n = 0;
    std::string basis_z, basis_window;
    bool basis_csv = false;
    auto* basis_cmd = app.add_subcommand("basis", "evaluate basis polynomials z^(n)");
    basis_cmd->add_option("--n", basis_n, "degree")->required();
    basis_cmd->add_option("--z", basis_z, "lattice point, e.g. 3 or 2+3i");
    basis_cmd->add_option("--window", basis_window, "window x0,x1,y0,y1 for --csv");
    basis_cmd->add_flag("--csv", basis_csv, "emit a CSV table with columns x,y,n,re,im");

    std::string eval_in, eval_z;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a realization at a lattice point");
    eval_cmd->add_option("--in", eval_in, "realization JSON file")->required();
    eval_cmd->add_option("--z", eval_z, "lattice point")->required();

    std::string ca_fn, ca_in, ca_window;
    auto* ca_cmd = app.add_subcommand("check-analytic", "test the lattice equation");
    ca_cmd->add_option("--fn", ca_fn, "built-in: const1 | z | rez | basis<k>");
    ca_cmd->add_option("--in", ca_in, "lattice function JSON file");
    ca_cmd->add_option("--window", ca_window, "window for built-ins");

    std::string int_fn, int_in, int_path, int_window;
    auto* int_cmd = app.add_subcommand("integrate", "trapezoid integral along a path");
    int_cmd->add_option("--fn", int_fn, "built-in function name");
    int_cmd->add_option("--in", int_in, "lattice function JSON file");
    int_cmd->add_option("--path", int_path, "comma-separated points, e.g. 0,1,1+1i")
        ->required();
    int_cmd->add_option("--window", int_window, "window for built-ins");

    std::string tmap_in, tmap_t;
    auto* tmap_cmd = app.add_subcommand("tmap", "classical transfer-function value");
    tmap_cmd->add_option("--in", tmap_in, "realization JSON file")->required();
    tmap_cmd->add_option("--t", tmap_t, "complex rational t, e.g. 1/2 or 1+1i")->required();

    std::string prod_lhs, prod_rhs;
    auto* prod_cmd = app.add_subcommand("product", "convolution product f2 o f1");
    prod_cmd->add_option("--lhs", prod_lhs, "realization JSON of f2")->required();
    prod_cmd->add_option("--rhs", prod_rhs, "realization JSON of f1")->required();

    std::string inv_in;
    auto* inv_cmd = app.add_subcommand("invert", "convolution inverse");
    inv_cmd->add_option("--in", inv_in, "realization JSON file")->required();

    std::string deg_w, deg_in;
    std::size_t deg_k = 0;
    auto* deg_cmd = app.add_subcommand("degree", "McMillan degree");
    deg_cmd->add_option("--w", deg_w, "kernel point: degree of K(., w)");
    deg_cmd->add_option("--in", deg_in, "realization JSON file");
    deg_cmd->add_option("--K", deg_k, "markov parameters to use (default 2n+1)");

    std::string ann_in;
    auto* ann_cmd = app.add_subcommand("annihilate", "annihilating polynomial");
    ann_cmd->add_option("--in", ann_in, "realization JSON file")->required();

    std::string sc_dims, sc_points;
    std::size_t sc_terms = 300;
    auto* sc_cmd = app.add_subcommand("schur-check", "seeded coisometry report");
    sc_cmd->add_option("--dims", sc_dims, "state,output,input dims n,m,p")->required();
    sc_cmd->add_option("--points", sc_points, "JSON file with lattice points");
    sc_cmd->add_option("--N", sc_terms, "kernel series terms (default 300)");

    std::size_t mc_n = 2;
    std::string mc_x = "1", mc_hlist = "1,1/2,1/4,1/8";
    auto* mc_cmd = app.add_subcommand("mesh-converge", "mesh refinement table");
    mc_cmd->add_option("--n", mc_n, "basis degree");
    mc_cmd->add_option("--x", mc_x, "real axis point (rational)");
    mc_cmd->add_option("--h-list", mc_hlist, "comma-separated mesh widths");

    std::string va_profile = "quick";
    auto* va_cmd = app.add_subcommand("verify-all", "run every invariant suite");
    va_cmd->add_option("--profile", va_profile, "quick | full (default quick)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        args.mode = mode_str.empty() ? default_mode() : parse_mode(mode_str);

        if (*basis_cmd)
            return dispatch_mode(args.mode, [&](auto tag) {
                return run_basis<decltype(tag)>(args, basis_n, basis_z, basis_window,
                                                basis_csv);
            });
        if (*eval_cmd)
            return dispatch_mode(args.mode, [&](auto tag) {
                return run_eval<decltype(tag)>(args, eval_in, eval_z);
            });
        if (*ca_cmd)
            return dispatch_mode(args.mode, [&](auto tag) {
                return run_check_analytic<decltype(tag)>(args, ca_fn, ca_in, ca_window);
            });
        if (*int_cmd)
            return dispatch_mode(args.mode, [&](auto tag) {
                return run_integrate<decltype(tag)>(args, int_fn, int_in, int_path,
                                                    int_window);
            });
        if (*tmap_cmd)
            return dispatch_mode(args.mode, [&](auto tag) {
                return run_tmap<decltype(tag)>(args, tmap_in, tmap_t);
            });
        if (*prod_cmd)
            return dispatch_mode(args.mode, [&](auto tag) {
                return run_product<decltype(tag)>(args, prod_lhs, prod_rhs);
            });
        if (*inv_cmd)
            return dispatch_mode(args.mode, [&](auto tag) {
                return run_invert<decltype(tag)>(args, inv_in);
            });
        if (*deg_cmd) {
            if (deg_w.empty() && deg_in.empty())
                throw UsageError("degree: need --w or --in");
            return dispatch_mode(args.mode, [&](auto tag) {
                return run_degree<decltype(tag)>(args, deg_w, deg_in, deg_k);
            });
        }
        if (*ann_cmd)
            return dispatch_mode(args.mode, [&](auto tag) {
                return run_annihilate<decltype(tag)>(args, ann_in);
            });
        if (*sc_cmd) return run_schur_check(args, sc_dims, sc_points, sc_terms);
        if (*mc_cmd) return run_mesh_converge(args, mc_n, mc_x, mc_hlist);
        if (*va_cmd) return run_verify_all(args, va_profile);

        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        json err{{"code", 2}, {"message", e.what()}, {"witness", ""}};
        if (args.as_json)
            std::cout << err.dump(2) << "\n";
        else
            std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        json err{{"code", 1}, {"message", e.what()}, {"witness", e.witness}};
        if (args.as_json)
            std::cout << err.dump(2) << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        json err{{"code", 2}, {"message", e.what()}, {"witness", ""}};
        if (args.as_json)
            std::cout << err.dump(2) << "\n";
        else
            std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        json err{{"code", 1}, {"message", e.what()}, {"witness", ""}};
        if (args.as_json)
            std::cout << err.dump(2) << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

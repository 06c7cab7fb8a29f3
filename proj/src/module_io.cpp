#include "ocat/module_io.hpp"

#include <sstream>

namespace ocat {

namespace {

void write_matrix(std::ostream& os, const LinMap& m) {
    os << m.rows() << " " << m.cols();
    for (int j = 0; j < m.cols(); ++j)
        for (const auto& [i, c] : m.col(j).entries()) os << " " << i << ":" << j << ":" << rat_str(c);
    os << "\n";
}

LinMap read_matrix(std::istringstream& ls) {
    int rows, cols;
    if (!(ls >> rows >> cols)) throw std::invalid_argument("module_load: bad matrix header");
    LinMap m(rows, cols);
    std::string ent;
    while (ls >> ent) {
        auto c1 = ent.find(':');
        auto c2 = ent.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::invalid_argument("module_load: bad matrix entry '" + ent + "'");
        int r = std::stoi(ent.substr(0, c1));
        int c = std::stoi(ent.substr(c1 + 1, c2 - c1 - 1));
        m.set(r, c, rat_parse(ent.substr(c2 + 1)));
    }
    return m;
}

}  // namespace

std::string module_save(ModulePtr f) {
    std::ostringstream os;
    os << "ocat-module 1\n";
    os << "operad " << f->operad()->name() << "\n";
    os << "bound " << f->N << "\n";
    os << "dims";
    for (int n = 0; n <= f->N; ++n) os << " " << f->dim(n);
    os << "\n";
    for (int n = 0; n <= f->N; ++n) {
        for (int a = 0; a + 1 < n; ++a) {
            os << "sym " << n << " " << a << " ";
            write_matrix(os, f->sym[n].gens[a]);
        }
    }
    for (const auto& [key, mats] : f->act) {
        const auto& hs = f->cat->hom(key.first, key.second);
        for (std::size_t i = 0; i < mats.size(); ++i) {
            if (mats[i].is_zero()) continue;
            os << "act " << key.first << " " << key.second << " " << hs.basis[i].key() << " ";
            write_matrix(os, mats[i]);
        }
    }
    os << "end\n";
    return os.str();
}

ModulePtr module_load(const std::string& text, CatPtr cat) {
    std::istringstream in(text);
    std::string line;
    auto mod = std::make_shared<TruncatedModule>();
    mod->cat = cat;
    mod->name = "loaded";
    mod->full_equal_arity = !cat->operad()->reduced() || cat->operad()->dim(1) != 1;
    std::vector<int> dims;
    int lineno = 0;
    bool header = false, ended = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (kw == "ocat-module") {
            header = true;
        } else if (kw == "operad") {
            std::string nm;
            ls >> nm;
            if (nm != cat->operad()->name())
                throw std::invalid_argument("module_load: operad mismatch at line " +
                                            std::to_string(lineno) + " ('" + nm + "')");
        } else if (kw == "bound") {
            ls >> mod->N;
            if (mod->N < 0 || mod->N > cat->nmax())
                throw std::invalid_argument("module_load: bound out of window");
        } else if (kw == "dims") {
            int d;
            while (ls >> d) dims.push_back(d);
            if (static_cast<int>(dims.size()) != mod->N + 1)
                throw std::invalid_argument("module_load: dims count at line " +
                                            std::to_string(lineno));
            for (int n = 0; n <= mod->N; ++n) {
                mod->spaces.push_back(Space::anonymous(dims[n], "e"));
                mod->sym.push_back(SymAction::trivial(n, dims[n]));
            }
        } else if (kw == "sym") {
            int n, a;
            if (!(ls >> n >> a)) throw std::invalid_argument("module_load: bad sym header");
            LinMap m = read_matrix(ls);
            if (n > mod->N || a + 1 >= n || m.rows() != dims[n] || m.cols() != dims[n])
                throw std::invalid_argument("module_load: sym shape at line " +
                                            std::to_string(lineno));
            mod->sym[n].gens[a] = std::move(m);
        } else if (kw == "act") {
            int m, n;
            std::string key;
            if (!(ls >> m >> n >> key)) throw std::invalid_argument("module_load: bad act header");
            if (m > mod->N || n > mod->N)
                throw std::invalid_argument("module_load: act arity out of bound at line " +
                                            std::to_string(lineno));
            const auto& hs = cat->hom(m, n);
            CatElt e = CatElt::from_key(key, m, n);
            auto it = hs.index.find(e);
            if (it == hs.index.end())
                throw std::invalid_argument("module_load: unknown basis morphism '" + key +
                                            "' at line " + std::to_string(lineno));
            auto& mats = mod->act[{m, n}];
            if (mats.empty())
                mats.assign(hs.dim(), LinMap::zero(dims[n], dims[m]));
            LinMap mat = read_matrix(ls);
            if (mat.rows() != dims[n] || mat.cols() != dims[m])
                throw std::invalid_argument("module_load: act shape at line " +
                                            std::to_string(lineno));
            mats[it->second] = std::move(mat);
        } else if (kw == "end") {
            ended = true;
        } else {
            throw std::invalid_argument("module_load: unknown directive '" + kw + "' at line " +
                                        std::to_string(lineno));
        }
    }
    if (!header || !ended) throw std::invalid_argument("module_load: missing header or end");
    return mod;
}

}  // namespace ocat

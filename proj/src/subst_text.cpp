#include "difflab/subst_text.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace difflab {

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

SubstitutionRule parse_rule_text(std::istream& in) {
    std::string alphabet_letters;
    std::map<char, std::string> images;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        const std::string where = "rule file line " + std::to_string(lineno) + ": ";
        if (t.rfind("alphabet", 0) == 0) {
            if (!alphabet_letters.empty()) throw std::invalid_argument(where + "duplicate alphabet line");
            alphabet_letters = strip(t.substr(8));
            if (alphabet_letters.empty()) throw std::invalid_argument(where + "empty alphabet");
            continue;
        }
        auto arrow = t.find("->");
        if (arrow == std::string::npos)
            throw std::invalid_argument(where + "expected '<letter> -> <image>'");
        std::string lhs = strip(t.substr(0, arrow));
        std::string rhs = strip(t.substr(arrow + 2));
        if (lhs.size() != 1) throw std::invalid_argument(where + "rule letter must be a single character");
        if (rhs.empty()) throw std::invalid_argument(where + "empty image");
        if (!images.emplace(lhs[0], rhs).second)
            throw std::invalid_argument(where + "duplicate rule for letter '" + lhs + "'");
    }
    if (alphabet_letters.empty()) throw std::invalid_argument("rule file: missing alphabet line");
    std::vector<std::string> image_list;
    for (char c : alphabet_letters) {
        auto it = images.find(c);
        if (it == images.end())
            throw std::invalid_argument(std::string("rule file: no rule for letter '") + c + "'");
        image_list.push_back(it->second);
        images.erase(it);
    }
    if (!images.empty())
        throw std::invalid_argument(std::string("rule file: rule for letter '") +
                                    images.begin()->first + "' outside the alphabet");
    return SubstitutionRule::from_strings(alphabet_letters, image_list);
}

SubstitutionRule load_rule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rule file '" + path + "'");
    return parse_rule_text(in);
}

void write_rule_text(std::ostream& out, const SubstitutionRule& rule) {
    if (!rule.alphabet().single_char())
        throw std::invalid_argument("rule files require single-character letters");
    out << "alphabet ";
    for (int a = 0; a < rule.alphabet().size(); ++a) out << rule.alphabet().symbol(a);
    out << "\n";
    for (int a = 0; a < rule.alphabet().size(); ++a)
        out << rule.alphabet().symbol(a) << " -> " << rule.word_string(rule.image(a)) << "\n";
}

std::string rule_text(const SubstitutionRule& rule) {
    std::ostringstream out;
    write_rule_text(out, rule);
    return out.str();
}

}  // namespace difflab

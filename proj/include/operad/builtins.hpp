#pragma once

#include "operad/presentations.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace operad {

inline const std::map<std::string, std::string>& builtin_sources() {
    static const std::map<std::string, std::string> src = {
        {"Com", R"(operad Com {
  gen m:2 symmetric;
  rel m(m(1,2),3) - m(m(2,3),1);
  rel m(m(1,2),3) - m(m(3,1),2);
})"},
        {"Lie", R"(operad Lie {
  gen b:2 antisymmetric;
  rel b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2);
})"},
        {"As", R"(operad As {
  gen m:2;
  rel m(m(1,2),3) - m(1,m(2,3));
})"},
        {"PreLie", R"(operad PreLie {
  gen m:2;
  rel m(m(1,2),3) - m(1,m(2,3)) - m(m(2,1),3) + m(2,m(1,3));
})"},
        {"Perm", R"(operad Perm {
  gen m:2;
  rel m(m(1,2),3) - m(1,m(2,3));
  rel m(m(1,2),3) - m(m(2,1),3);
})"},
        {"Nov", R"(operad Nov {
  gen m:2;
  rel m(m(1,2),3) - m(1,m(2,3)) - m(m(2,1),3) + m(2,m(1,3));
  rel m(m(1,2),3) - m(m(1,3),2);
})"},
        {"Dend", R"(operad Dend {
  gen prec:2;
  gen succ:2;
  rel r1: prec(prec(1,2),3) - prec(1,prec(2,3)) - prec(1,succ(2,3));
  rel r2: prec(succ(1,2),3) - succ(1,prec(2,3));
  rel r3: succ(prec(1,2),3) + succ(succ(1,2),3) - succ(1,succ(2,3));
})"},
        {"Leib", R"(operad Leib {
  gen m:2;
  rel m(1,m(2,3)) - m(m(1,2),3) - m(2,m(1,3));
})"},
        {"Zinb", R"(operad Zinb {
  gen m:2;
  rel m(1,m(2,3)) - m(m(1,2),3) - m(m(2,1),3);
})"},
        {"Pois", R"(operad Pois {
  gen m:2 symmetric;
  gen b:2 antisymmetric;
  rel m(m(1,2),3) - m(m(2,3),1);
  rel m(m(1,2),3) - m(m(3,1),2);
  rel b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2);
  rel b(1,m(2,3)) - m(b(1,2),3) - m(2,b(1,3));
})"},
    };
    return src;
}

inline std::vector<std::string> builtin_names() {
    return {"Com", "Lie", "As", "PreLie", "Perm", "Nov", "Dend", "Leib", "Zinb", "Pois"};
}

inline Presentation builtin(const std::string& name) {
    const auto& src = builtin_sources();
    auto it = src.find(name);
    if (it == src.end()) throw std::invalid_argument("unknown builtin operad '" + name + "'");
    return parse(it->second);
}

}  // namespace operad

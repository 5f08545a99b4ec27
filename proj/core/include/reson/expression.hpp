#pragma once

#include <memory>
#include <string>

#include "reson/types.hpp"

namespace reson {

// Expression tree over one real variable x, evaluable at complex arguments.
// Grammar: real literals, pi, e, x, + - * / ^, unary -, exp sin cos sinh
// cosh sqrt, parentheses.  '^' binds tightest and is right-associative.
class Expression {
public:
    struct Node;

    static Expression parse(const std::string& src);  // throws ParseError

    Cplx eval(Cplx x) const;
    bool has_sqrt() const { return has_sqrt_; }
    const std::string& source() const { return src_; }

private:
    std::shared_ptr<const Node> root_;
    std::string src_;
    bool has_sqrt_ = false;
};

}  // namespace reson

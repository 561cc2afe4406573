#include "pellforms/matrix.hpp"

namespace pellforms {

Mat2 Mat2::inverse() const {
  const QElem dt = det();
  return {d / dt, -b / dt, -c / dt, a / dt};
}

std::string Mat2::str() const {
  return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]";
}

std::string IntMat2::str() const {
  return "[[" + a.get_str() + ", " + b.get_str() + "], [" + c.get_str() + ", " + d.get_str() + "]]";
}

}  // namespace pellforms

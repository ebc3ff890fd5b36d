#ifndef COARSEDEG_VERSION_HPP
#define COARSEDEG_VERSION_HPP

namespace coarsedeg {

inline constexpr const char* kVersion = "0.1.0";

} // namespace coarsedeg

#endif // COARSEDEG_VERSION_HPP

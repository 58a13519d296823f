#ifndef BUSBAR_VERSION_HPP
#define BUSBAR_VERSION_HPP

namespace busbar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace busbar

#endif  // BUSBAR_VERSION_HPP

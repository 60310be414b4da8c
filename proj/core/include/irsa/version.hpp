#ifndef IRSA_VERSION_HPP
#define IRSA_VERSION_HPP

namespace irsa {

inline constexpr const char* version = "0.1.0";

}  // namespace irsa

#endif

#ifndef FAI_FAI_HPP
#define FAI_FAI_HPP

#include "error.hpp"
#include "rational.hpp"
#include "lattice.hpp"
#include "fset.hpp"
#include "gconn.hpp"
#include "semantics.hpp"
#include "context.hpp"
#include "proof.hpp"
#include "io.hpp"

#endif  // FAI_FAI_HPP

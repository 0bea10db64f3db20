#ifndef MISERE_HPP_
#define MISERE_HPP_

#include "misere/error.hpp"
#include "misere/monoid.hpp"
#include "misere/octal.hpp"
#include "misere/oracle.hpp"
#include "misere/position.hpp"
#include "misere/quotient.hpp"
#include "misere/rewriting.hpp"
#include "misere/serialize.hpp"
#include "misere/sibert_conway.hpp"
#include "misere/structure.hpp"
#include "misere/verifier.hpp"
#include "misere/words.hpp"

#endif  // MISERE_HPP_

// Umbrella header.

#ifndef FPMN_FPMN_HPP_
#define FPMN_FPMN_HPP_

#include "coset.hpp"
#include "driver.hpp"
#include "error.hpp"
#include "lemma1.hpp"
#include "nilpotent.hpp"
#include "oracle.hpp"
#include "parse.hpp"
#include "presentation.hpp"
#include "serialize.hpp"
#include "snf.hpp"
#include "stallings.hpp"
#include "words.hpp"
#include "wreath.hpp"

#endif // FPMN_FPMN_HPP_

"""Canonical forms and structure for the free regular semigroup weakly
generated by one element, plus the embedded two-idempotent model."""

from .alphabet import (Anchor, BASE, G2E1, G2E2, G3D1, G3D2, G3D3, G3D4,
                       GenTuple, ONE, Side, TupleClass, TupleFault, X, XP,
                       by_name, enumerate_level, format_token,
                       get_height_cap, ground, height_of, intern_tuple,
                       involute, parse_token, preceq, resolve_sides,
                       set_height_cap, validate_tuple, wing_triplets)
from .landscape import (Landscape, LandscapeInfo, NotLandscape, TRIVIAL,
                        Word, analyze, enumerate_hills, format_word,
                        hills_of, join, parse_word, reverse, word_of)
from .rewrite import (ConfluenceReport, UpliftStep, beta, beta1,
                      beta1_letter, beta2, beta2_steps, check_confluence,
                      river_vector, uplift)
from .algebra import (Element, GreenReport, IDENTITY, canonical_inverse,
                      covers, dclass, equal, green_compare, green_leq,
                      is_gorge, is_idempotent, is_inverse_pair, l_class,
                      natural_leq, natural_leq_oracle, product,
                      r_below_witness, r_class, sandwich)
from .fi2 import (EmbeddingReport, IMountain, ITriple, check_embedding,
                  enumerate_gcirc, enumerate_ilevel, format_iletter, gbar,
                  in_Gcirc, in_Mcirc, inormalize, iproduct, mcirc_hills,
                  mcirc_mountains, parse_iword, phi_letter, phi_mountain,
                  psi_letter, psi_mountain)
from .errors import (DomainError, FregxError, HeightCapExceeded,
                     InvalidTupleError, LandscapeError,
                     NormalizationOverflow, ParseError)

__version__ = "0.1.0"

"""Spell checking and morphological analysis for Sorani Kurdish."""
from soranispell.engine import Analysis, Speller, Suggestion, UnresolvedFlag
from soranispell.lexfmt import AffixRuleSet, DicEntry, Dictionary, parse_aff, parse_dic
from soranispell.script import normalize, tokenize, transliterate

__all__ = ["Analysis", "AffixRuleSet", "DicEntry", "Dictionary", "Speller", "Suggestion",
           "UnresolvedFlag", "normalize", "parse_aff", "parse_dic", "tokenize", "transliterate"]
__version__ = "0.1.0"

"""Stanley depth of squarefree monomial ideals and their quotients."""

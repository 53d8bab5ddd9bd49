"""Construction and arithmetic of Polynomial Modular Number Systems (PMNS) over Z/pZ."""

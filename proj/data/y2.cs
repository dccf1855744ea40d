# Y clasper whose first leaf meets an edge and the knot twice
(* *)
leaf 0: e=1 k=2
leaf 1: k=1 cl=1

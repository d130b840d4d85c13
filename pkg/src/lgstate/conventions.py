"""Sign and normalization conventions used throughout the package."""

CONVENTIONS_ID = "lgstate-signs-1"

TEXT = """\
lgstate sign conventions ({id})

Matrix factorizations
  Generators are listed even first, then odd.  d_M = [[0, d_ev], [d_od, 0]]
  with d_od: M_ev -> M_od and d_ev: M_od -> M_ev, so d_M^2 = W * id.
  A morphism f: M -> N is a rank(N) x rank(M) matrix acting on column
  vectors; compose(g, f) = G F.  Parity of the (i, j) entry slot is
  p_N(i) + p_M(j).
  hom_diff(f) = d_N f - (-1)^|f| f d_M.
  Tensor product: d(e_a (x) f_b) = d_M e_a (x) f_b + (-1)^|a| e_a (x) d_N f_b.
  Supertrace: Str(f) = sum_i (-1)^p(i) f_ii.

Hochschild complex of (R, W)
  boundary(r_0|...|r_k) = sum_{{i<k}} (-1)^i r_0|..|r_i r_{{i+1}}|..|r_k
                          + (-1)^k r_k r_0|r_1|..|r_{{k-1}}
  w_insertion(r_0|...|r_k) = sum_{{i=0}}^{{k}} (-1)^i r_0|..|r_i|W|r_{{i+1}}|..|r_k
  hochschild_diff = boundary - w_insertion
  The relative minus sign is forced: with the shifted-degree (bar) signs
  below, the trace map of the factorization category lands in this complex
  and not in boundary + w_insertion.  No rational rescaling of word lengths
  exchanges the two (it would need a square root of -1); both have the
  same homology, and boundary - w_insertion is the complex for curvature -W
  written with the plus convention.
  Words longer than L + 1 factors are discarded.

HKR
  hkr(r_0|...|r_k) = (1/k!) r_0 dr_1 ^ ... ^ dr_k.
  (dW ^) hkr = hkr w_insertion holds exactly; hkr boundary = 0.
  Hence hkr intertwines hochschild_diff with (Omega, -dW ^).

Category Hochschild differential (cat_diff)
  Shifted degrees |x_m| = |a_m| + 1, eps_m = |x_0| + ... + |x_m|.
  b1(s a) = s hom_diff(a); b2(s a, s b) = (-1)^|s a| s(a b) with a b the
  matrix product, so b is applied first.  The Hochschild differential
  applies b1 at slot m with sign (-1)^eps_{{m-1}}, b2 at slots (m, m+1) with
  the same Koszul sign times the b2 sign, and the cyclic term b2(x_k, x_0)
  with sign (-1)^(|x_k| eps_{{k-1}}).  cat_diff is minus this expression,
  matching hochschild_diff, which is minus the same recipe applied to R
  with curvature b0 = -s W.

Trace map psi
  Between consecutive morphisms a_m, a_{{m+1}} insert s copies of d of the
  brane they share (source of a_m); the final group sits after a_k.  The
  graded matrix trace of the word with row indices i_0..i_K carries
  (-1)^((K+1) p(i_0) + p(i_1) + ... + p(i_K)); for K = 0 this is the
  supertrace.  hochschild_diff psi = psi cat_diff with global sign +1.

Closed state space
  Complex (Omega, dW ^); homology J_W dy^1 ^ ... ^ dy^n.
  Internal degree of a word or form: t = k - 2 * (quasi-homogeneous weight),
  dy^i weighted like y_i and W of weight 1; the differential lowers t by 1.

Residue
  Res(h) = coefficient of the top-weight standard monomial of NF(h) modulo
  the Jacobian ideal, scaled so that Res(hess W) = mu.  W = x^2 gives
  Res(1) = 1/2; W = x^3 gives Res(x) = 1/3.

Boundary-bulk and Kapustin-Li
  tau_M(a) = sum_k (1/k!) Str(a (dd_M)^k), dd_M the matrix of 1-forms
  d(entry); kapustin_li(M, a) = Res(top coefficient of tau_M(a));
  kl_pairing(a, b) = kapustin_li(target(a), a b).

Orbifolds
  g acts on functions by (g r)(v) = r(g^-1 v).  Twisted group ring:
  (r g)(s h) = r g(s) gh.  delta^g_i by telescoping through the mixed points
  (1(x)y_1, .., 1(x)y_{{i-1}}, *, g(y_{{i+1}})(x)1, ..); the twisted Leibniz rule
  holds exactly in one variable and up to a Koszul syzygy in general.
  d^K = contraction with sum_i (g(y_i)(x)1 - 1(x)y_i) d/dy^i;
  d^K_W = sum_i delta^g_i(W) dy^i ^ (coefficient 1).
  Sector g: C_g acts on J_g vol_g by pullback, including det on vol_g.
  Cyclic diagonal actions of order m use scalars in Q[zeta]/Phi_m(zeta).

TFT
  Composition in path order: a in A(E,F), b in A(F,G) gives ab in A(E,G).
  <[a],[b]> = Tr(x -> a x b) on A(E,F).
""".format(id=CONVENTIONS_ID)

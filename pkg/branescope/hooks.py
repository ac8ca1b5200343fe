app_name = "branescope"
app_title = "Branescope"
app_publisher = "Branescope Developers"
app_description = "Exact line-bundle cohomology on toric varieties and their anticanonical Calabi-Yau hypersurfaces"
app_license = "MIT"

# CLI commands, resolved lazily by dotted path
commands = {
	"polytope": {
		"check": "branescope.api.check_polytope",
		"dual": "branescope.api.dual_polytope",
		"points": "branescope.api.polytope_points",
	},
	"toric": {
		"fan": "branescope.api.toric_fan",
		"divisor-cohomology": "branescope.api.divisor_cohomology_report",
	},
	"branes": {
		"cohomology": "branescope.api.hypersurface_report",
		"ext": "branescope.api.ext_report",
		"spanning": "branescope.api.spanning_report",
		"rectangle": "branescope.api.rectangle_report",
		"triangle": "branescope.api.triangle_report",
		"homdim": "branescope.api.homological_dimension_report",
	},
	"equivariant": {
		"localize": "branescope.api.localize_report",
		"xi": "branescope.api.xi_report",
		"compare": "branescope.api.compare_report",
	},
	"gauge": {
		"ym": "branescope.api.ym_report",
		"probe": "branescope.api.probe_report",
		"connection": "branescope.api.connection_report",
		"curvature": "branescope.api.curvature_report",
	},
	"verify": "branescope.tasks.verify_claims",
}

# Reports that have a CSV rendering
table_reports = ["ext_table", "rectangle_table"]

# Claim checks run by `verify`, in order
verification_tasks = [
	"branescope.tasks.check_reflexivity",
	"branescope.tasks.check_toric_cohomology",
	"branescope.tasks.check_hypersurface",
	"branescope.tasks.check_spanning",
	"branescope.tasks.check_rectangle",
	"branescope.tasks.check_triangles",
	"branescope.tasks.check_equivariant",
]

# Bundled example documents
fixtures = {
	"p2": "data/p2.json",
	"square": "data/square.json",
	"p3": "data/p3.json",
	"octahedron": "data/octahedron.json",
	"fermat_cubic": "data/fermat_cubic.json",
	"line": "data/line.json",
	"fermat_quartic": "data/fermat_quartic.json",
}

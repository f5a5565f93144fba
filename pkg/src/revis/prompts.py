"""Prompt templates for the three-step image-to-DSL pipeline.

The texts are fixed verbatim; the only variability is substitution at the
named slots ({structure_result}, {cleaned_dsl}, {template_index}, {dsl},
{mark_type}, {container_id}).  Doubled braces in embedded JSON examples are
collapsed to single braces when a prompt is rendered.  A hash test guards
the templates against accidental drift.
"""

from __future__ import annotations

import re

SLOT_NAMES = (
    "structure_result",
    "cleaned_dsl",
    "template_index",
    "dsl",
    "mark_type",
    "container_id",
)

_SLOT_RE = re.compile(r"\{(" + "|".join(SLOT_NAMES) + r")\}")


def render_prompt(template: str, **slots: str) -> str:
    """Collapse doubled braces, then fill exactly the marked slots."""
    text = template.replace("{{", "{").replace("}}", "}")

    def fill(match: re.Match) -> str:
        name = match.group(1)
        if name not in slots:
            raise KeyError(f"prompt slot {name!r} was not provided")
        return slots[name]

    return _SLOT_RE.sub(fill, text)


STEP1_STRUCTURE_PROMPT = """\
You are a domain-specific language (DSL) parsing assistant for graphics and data visualization.

Your goal is to parse the visual layout of a given image step by step and output a structured DSL description.

Please analyze the visualization by decomposing it purely based on its visual spatial layout first — focus on the spatial grouping, concentric layers, angular sectors, and element density or geometry. Do not assume any data encoding (e.g., time, value, categories) or semantic meaning until the visual structure is clearly separated and described. Prioritize visual segmentation based on shape, position, size, and graphical patterns.

Always parse and describe data-encoding marks first (circle, rectangle, arc, line, band, area).
Ignore decorative or annotation elements (labels, arrows, legends, dashed lines, axes and tick marks, explanatory text, callout boxes, margin strip). Do not include them in the output, but if the line, band, or area is used to encode data, connect two visual components, or indicate necessary information, it should be included in the output.

(important) Do not miss any data-encoded visual components in the visual design.

Connecting bands or lines between visual components should be considered as an individual visual component (one leaf container for all bands/lines), whose coordinate ranges depend on the nodes it connects.

Step 1: Determine the Coordinate System

- First, identify the coordinate system of the entire visual design (root container):
  - Cartesian system:
    - Define the bottom-left corner (x1, y1) and the top-right corner (x2, y2) to establish the full coordinate space.
    - default: (x1: 0, y1: 0, x2: 100, y2: 100) and (x2, y2) depends on the rate of width and height of the visual design.
  - Polar system:
    - Define the polar center (cx, cy), the angular axis range (a1, a2), and the radial axis range (r1, r2).
    - default: (cx: 0.5, cy: 0.5, a1: 0, a2: 360, r1: 0, r2: 1)
- circular design uses polar coordinates, and Cartesian design uses Cartesian coordinates.
- only allow polar coordinates into a Cartesian container, and not allow Cartesian coordinates into a polar container.

Step 2: Decompose into Visual Components

Before splitting, first decide whether the design is a single basic chart or multiple sub-views.

- If the whole visualization is a single basic chart composed of repeated marks of one type in one shared coordinate system (for example: a simple bar chart, radial bar chart with several concentric arcs, pie chart, donut chart, or scatter plot), you MUST keep the entire chart as one single leaf container:
  - set if_leaf: true,
  - set mark_type to that mark type,
  - and set components: null.
  In this case, you are not allowed to create any child containers.
- Only split the design into multiple sub-containers when there are clearly different visual groups, such as:
  - different mark types (e.g., bars + line + area),
  - visually separated regions (e.g., small multiples, multiple panels),
  - or an overlaid band/connector that should be treated as its own layer.
- Check whether the visual design can be split into non-overlapping sub-visual components along one axis of the chosen coordinate system.
- If possible, divide the design into multiple sub-containers, each representing one visual component. If the visualization is a basic chart with only one type of visual mark, such as a line, rectangle, circle, arc, or area, do not decompose it further.
- Assign a distinct coordinate subspace to each container.
- Example for polar coordinates:
  - Split along the radial (r) axis into three containers:
  - container0 covering (r: 0-0.3)
  - container1 covering (r: 0.3-0.6)
  - container2 covering (r: 0.6-1.0)
- Example for Cartesian coordinates:
  - Split along the x-axis into three containers:
  - container0 covering (x: 0-30)
  - container1 covering (x: 30-60)
  - container2 covering (x: 60-100)
- Generate a detailed description for each container to explain the visual component it represents, including the visual elements and their relative positions.
- Decompose a container into multiple containers if it can be split along one axis.
- If it can be split along the two axes like a grid, split it into a grid and assign a distinct coordinate subspace to each container similarly.
- If there are overlapping containers, split them into multiple containers, and assign a distinct coordinate subspace to each container similarly.
- For example:
  - If a visual design is an enhanced scatter plot, with each scatter plot as a new polar-based glyph, each glyph as a new container with a polar coordinate system.

Step 3: Recursively Decompose Sub-Containers

1. Check if further decomposition is possible:
   - Inspect whether the current sub-container can be divided into smaller, non-overlapping sub-components based on its own coordinate system.
   - Possible division dimensions include radial (r) bands, angular (a) sectors, or rectangular subdivisions (if Cartesian).
2. If decomposition is possible:
   - Create new child containers for each identified sub-region.
   - Define their coordinate ranges (r1, r2, a1, a2 in polar; or (x1, y1)-(x2, y2) in Cartesian).
   - Update the parent container's components to include these new sub-containers.
3. If no further decomposition is possible:
   - Treat this sub-container as a leaf node.
   - Add the mark_type to the container.
4. must not overly decompose the same atomic visual marks:
   - If a container only includes one type of atomic visual marks that share the same encoding and layout rule (e.g., multiple arcs in a radial bar chart, multiple bars in a grouped bar chart, multiple points in a scatter plot), treat them as one single leaf container. Do NOT split them into one container per mark.

Repeat recursively until every container is either:
- Fully decomposed into the same atomic visual marks: circle, rectangle, arc, line, band, area.
- Confirmed as indivisible (leaf container), a different mark type could be further divided into multiple containers.
- Assign a unique container_id to each container.
- Specify the coordinate system for each container with concrete values.
- if the container is a leaf container, set if_leaf to true, and set the atomic visual marks, like mark_type: circle, rectangle, arc, line, band, area; must not wrongly set arcs in polar coordinates as rectangles.
- If the container has components, mark it the if_leaf as false.
- Please do not miss any visual components in the visual design; double-check all visual elements are included in the DSL.
- If the container includes only one type of visual mark can be layout with one same rule, mark the container as a leaf container, and no need to further decompose it. For example, do not decompose a stacked bar chart into individual bars, even if they have different fill colors.
- all leaf container must have a mark_type. double check all leaf containers have a mark_type.
"""


TEMPLATE_PARSING_1_PROMPT = """\
You are a highly capable, thoughtful, and precise assistant.
Your task is to parse a DSL container tree, identify repeated composite units, and merge them into data-driven template containers.

Return ONLY JSON as final output.

Think step by step, but only output the final JSON.

Step 1: Analyze the DSL Structure

The following DSL describes containers and their components:
{structure_result}

Step 2: Identify Template Patterns

Template granularity (very important)
- A data-driven template container should correspond to the smallest repeated composite unit whose children are leaf mark-containers (e.g., one small panel containing bars and a reference line).
- If both a larger group (e.g., a whole column of panels) and a smaller unit (one panel) are repeated:
  - Always choose the smaller composite (the panel) as the template container.
  - The larger grouping (columns / multiple rows) must be represented only in data patterns (later) and NOT as another template container.
- Within one spatial region, do NOT create nested template containers that are generated by the same higher-level data pattern (no "template of templates").
- When deciding the root for a data-driven template:
  - Prefer the lowest container whose children are leaf mark-containers (e.g., one small panel).
  - Do NOT add an extra template container that only groups multiple template instances.
  - Replace the description of the template container with a short summary of the repeated visual elements, its outer bounding box, and its layout pattern.

Merging rules
- Follow a top-down approach, traversing top containers first and then inner containers.
- Identify repeated structures.
- Remove repeated structures, keeping one data-driven template container that stands for all repeated instances.
- Replace the container_id with a variable where it is repeated (e.g., 0-a, 0-b, 0-c):
  - Use different variables a, b, c, etc. for different template patterns.
  - Do not use the same variable for different template patterns.
- For each data-driven template container:
  - Its coordinate_system should be the bounding box of all its instances (the full region where all repeated units appear).
  - However, one instance of this template still corresponds to a single repeated visual unit (e.g., one small histogram panel).
  - Inside this template container, you should only keep the structure of one representative instance (one panel), not all of them.
- Only merge containers when:
  - They have the same visual elements and the same data encodings.
  - Their only difference is spatial position and underlying data, not layout logic.
  - They can be generated from the same data pattern (i.e., one unified data-driven template).
- (Important) Do not merge containers when:
  - Visual elements differ,
  - Data encodings differ,
  - Semantics differ, or
  - Their layouts follow different rules (e.g., stacking vs. gridding, or stacking direction differs), even if the marks look similar.
- Only merge existing containers when necessary. Do not introduce new hierarchy levels beyond what is needed to represent the template.
- Do not change mark_type values.
- When you have already decided that a container is a data-driven template:
  - Only analyze one instance of its contents to clean redundancy.
  - Do NOT create another data-driven template inside it for repeated containers that belong to the same repetition pattern.
  - Inside a template container, repeated leaf marks (e.g., multiple bars inside one panel) should remain as normal mark containers, NOT as new template containers.

Examples

1D merge example input
{{
  "container_id": "0",
  "coordinate": "cartesian",
  "coordinate_system": {{
    "x1": 0, "y1": 0, "x2": 100, "y2": 100
  }},
  "components": [
    {{
      "container_id": "0-0",
      "description": "same visual component.",
      "coordinate": "cartesian",
      "coordinate_system": {{
        "x1": 0, "y1": 0, "x2": 30, "y2": 100
      }}
    }},
    {{
      "container_id": "0-1",
      "description": "same visual component.",
      "coordinate": "cartesian",
      "coordinate_system": {{
        "x1": 30, "y1": 0, "x2": 60, "y2": 100
      }}
    }},
    {{
      "container_id": "0-2",
      "description": "different visual component"
    }}
  ]
}}

1D merge example output
{{
  "container_id": "0",
  "coordinate": "cartesian",
  "coordinate_system": {{
    "x1": 0, "y1": 0, "x2": 100, "y2": 100
  }},
  "components": [
    {{
      "container_id": "0-a",
      "description": "template for a single repeated component, with its coordinate representing the outer boundary of all repeated instances, and its layout structure is a 1D_LIST.",
      "coordinate": "cartesian",
      "coordinate_system": {{
        "x1": 0, "y1": 0, "x2": 60, "y2": 100
      }}
    }},
    {{
      "container_id": "0-2",
      "description": "different visual component"
    }}
  ]
}}

2D merge example input
{{
  "container_id": "0",
  "coordinate": "cartesian",
  "description": "example root",
  "coordinate_system": {{
    "x1": 0, "y1": 0, "x2": 100, "y2": 100
  }},
  "components": [
    {{
      "container_id": "0-0",
      "description": "the first column has three small panels",
      "coordinate": "cartesian",
      "coordinate_system": {{
        "x1": 0, "y1": 0, "x2": 30, "y2": 90
      }}
      "components": [
        {{
          "container_id": "0-0-0",
          "description": "the first panel in the first column",
          "coordinate_system": {{
            "x1": 0, "y1": 0, "x2": 30, "y2": 30
          }}
        }},
        {{
          "container_id": "0-0-1",
          "description": "the second panel in the first column",
          "coordinate_system": {{
            "x1": 0, "y1": 30, "x2": 30, "y2": 60
          }}
        }},
        {{
          "container_id": "0-0-2",
          "description": "the third panel in the first column",
          "coordinate_system": {{
            "x1": 0, "y1": 60, "x2": 30, "y2": 90
          }}
        }}
      ]
    }},
    {{
      "container_id": "0-1",
      "description": "the second column has two small panels, the panels are the same as the first column",
      "coordinate": "cartesian",
      "coordinate_system": {{
        "x1": 30, "y1": 0, "x2": 60, "y2": 60
      }},
      "components": [
        {{
          "container_id": "0-1-0",
          "description": "the first panel in the second column",
          "coordinate": "cartesian",
          "coordinate_system": {{
            "x1": 30, "y1": 0, "x2": 60, "y2": 30
          }}
        }},
        {{
          "container_id": "0-1-1",
          "description": "the second panel in the second column",
          "coordinate": "cartesian",
          "coordinate_system": {{
            "x1": 30, "y1": 30, "x2": 60, "y2": 60
          }}
        }}
      ]
    }}
  ]
}}

2D merge example output
{{
  "container_id": "0",
  "coordinate": "cartesian",
  "description": "example root",
  "coordinate_system": {{
    "x1": 0, "y1": 0, "x2": 100, "y2": 100
  }},
  "components": [
    {{
      "container_id": "0-a",
      "description": "template for a single repeated panel, laid out in a 2D grid; its coordinate represents the outer boundary of all repeated panel instances.",
      "coordinate": "cartesian",
      "coordinate_system": {{
        "x1": 0, "y1": 0, "x2": 60, "y2": 90
      }},
      "components": [...]
    }}
  ]
}}

Step 3: Output requirements

You must output a JSON object with TWO fields:

cleaned_dsl: the merged DSL with template containers (no template_data_specification here).

template_index: an array that records which original containers were merged into each template.

Schema:
{{
  "cleaned_dsl": {{ ... }},
  "template_index": [
    {{
      "template_id": "0-a",
      "instance_ids": ["0-0", "0-1"],
      "instance_bboxes": [
        {{
          "x1": 0, "y1": 0, "x2": 30, "y2": 100
        }},
        {{
          "x1": 30, "y1": 0, "x2": 60, "y2": 100
        }}
      ]
    }}
  ]
}}

template_id is the container_id of the merged template container (e.g., "0-a").

instance_ids are the original container_ids merged into this template.

instance_bboxes are the original coordinate_system values for each instance.

Only include templates that correspond to repeated containers.

Return ONLY this JSON. No extra text.
"""


TEMPLATE_PARSING_2_PROMPT = """\
You are a highly capable, thoughtful, and precise assistant.
Your task is to infer the template_data_specification for a data-driven template container, based on a cleaned DSL and a template_index describing which original containers were merged.

Return ONLY JSON as final output.

Think step by step, but only output the final JSON.

Inputs

- Original DSL:
{structure_result}

- Cleaned DSL with template containers:
{cleaned_dsl}

- Template index mapping templates to their original instances:
{template_index}

template_index has:
- template_id: the container_id of the template container in the cleaned DSL (e.g., "0-a").
- instance_ids: original container_ids that were merged into this template.
- instance_bboxes: their original coordinate_system bounding boxes.

Each template container corresponds to a repeated composite unit, and each instance of that composite corresponds to one data item (or one cell in a 1D/2D structure).

Step 1: Infer Data Structure
(data_type and data_size)

For the template_index:

1. Treat each instance in instance_bboxes as one data instance.

2. Select Data Type
- 1D_LIST -> containers arranged equally along a single dimension (horizontal row, vertical column, or circular ring).
- 2D_MATRIX -> instances form a regular grid (uniform number of rows x columns).
- 2D_LIST -> groups with varying item counts per group.
- Always choose the simplest structure that fits all instances.

3. Determine Dimensions
- Use positions in bounding boxes to decide which dimension(s) drive repetition:
  - primary dimension = outer repetition axis.
  - secondary dimension = inner repetition within each group (for 2D structures).
- If only one axis is used, it is the primary.

4. Count Elements
- primary.number = the number of groups or instances along the primary dimension.
- secondary.number:
  - integer for 2D_MATRIX (consistent count per group).
  - integer array for 2D_LIST, listing group-wise counts.
- Add explanation (<= 20 words) for both primary and secondary (if present), briefly justifying the numbers.

Step 2: Infer Layout Specification
(layout_specification)

For each template, use the spatial distribution of its instance_bboxes.

For each dimension that influences layout (x, y, radius, angle), infer:
- stacking: whether elements accumulate along this dimension.
- stacking_direction: 'min' | 'max' | 'middle'.
  - For x: min is left, max is right.
  - For y: min is bottom, max is top.
- anchor: 'min' | 'max' | 'middle' | 'stacking_decided'.
- subdividing: true only if stacking and the instances essentially fill the whole dimension.
- 2d_flatten: whether hierarchical groups are flattened along this dimension.
- size_uniform: whether instance sizes are consistent in this dimension.
- size_range: [min, max] in 0-100 relative units (normalize using the template's overall bounding box from the cleaned DSL).
- anchor_distribute: 'fixed_value' | 'uniform_interval' | 'flexible'.
- anchor_start: first anchor position (0-100).
- anchor_interval: spacing between anchors (0-100).
- number: element count or array, aligning with the inferred data structure.

Normalization Rules
- Normalize positions (e.g., anchor_start, anchor_interval) to [0-100] along each dimension.
  - If anchor_distribute = 'fixed_value', anchor_start is the exact position.
  - If anchor_distribute = 'uniform_interval', anchor_start is the first position and anchor_interval is the spacing.
  - Ensure anchor_start + number * anchor_interval <= 100.
- Normalize size values (size_range) to [0-100] relative to the template's bounding box.

Ambiguity Handling
When evidence is uncertain:
- Prefer simpler data_type (1D_LIST < 2D_MATRIX < 2D_LIST).
- Treat spacing as 'uniform_interval' when variance <= 5%.
- If both x and y could be primary, pick the one with larger inter-group spacing ratio.
- Omit unused dimensions from layout_specification.

Step 3: Output Requirements

You must output a single JSON object:

{
  "container_id": "0-a",
  "data_structure": {
    "data_type": "1D_LIST | 2D_MATRIX | 2D_LIST",
    "data_size": {
      "primary": {
        "number": 0,
        "dimension": "x | y | radius | angle | [dimension]",
        "explanation": "Explain the reason for choosing this number"
      },
      "secondary": {
        "number": 0,
        "dimension": "x | y | radius | angle",
        "explanation": "Explain the reason for choosing this number"
      }
    }
  },
  "layout_specification": {
    "x": {
      "stacking": false,
      "stacking_direction": "min | max | middle",
      "anchor": "min | max | middle | stacking_decided",
      "subdividing": false,
      "2d_flatten": false,
      "size_uniform": false,
      "size_range": [0, 0],
      "anchor_distribute": "fixed_value | uniform_interval | flexible",
      "anchor_interval": 0,
      "anchor_start": 0
    },
    "y": {
      "stacking": false,
      "stacking_direction": "min | max | middle",
      "anchor": "min | max | middle | stacking_decided",
      "subdividing": false,
      "2d_flatten": false,
      "size_uniform": false,
      "size_range": [0, 0],
      "anchor_distribute": "fixed_value | uniform_interval | flexible",
      "anchor_interval": 0,
      "anchor_start": 0
    },
    "radius": { ... },
    "angle": { ... }
  }
}

Only include dimensions actually used in the layout.

Use exact field names and enum strings.

Return ONLY this JSON. No extra text.
"""


MARK_PARSING_PROMPT = """\
You are a data generation assistant.
Your task: Given the DSL (container tree + visual marks) and the design image, produce the JSON data specification for the target container and mark type.
Follow the schema constraints strictly.

1. Context

- DSL: {dsl}
- Target:
  - mark_type = {mark_type}
  - container_id = {container_id}

Only consider marks that belong to {container_id}.
If the DSL uses a template container (with letter suffix like "_a"), parse one representative instance using its own relative coordinate.

Output must be JSON only. No text.

2. Output Schema (Top-Level)

The final returned JSON must match:
{
  "data_structure": {...},
  "mark_specification": {...},
  "layout_specification": {...},
  "non_layout_specification": {...}
}

3. Step 1 --- Determine Data Structure

3.1 Choose data_type
Three valid categories:

(1) 1D_LIST
A single repeated sequence. dimension refers to the layout dimensions involved.
Examples:
- A simple bar chart along x -> dimension = ['x']
- A scatter plot -> dimension = ['x','y'] // circles distribute data points in two dimensions.

Format:
{
  "primary": {
    "number": <int>,
    "dimension": "x" | "y" | ["x","y"] | "radius" | "angle" | ["radius","angle"]
  }
}

(2) 2D_MATRIX
A regular grid: rows x columns where both counts are consistent.
primary dimension means the dimension that is used to layout the group, and secondary dimension means the dimension that is used to layout the item in each group.
Grouped bar chart -> primary dimension = 'x', secondary dimension = 'x', since bar group subdivide x dimension and each bar in a group subdivide x dimension.

Format:
{
  "primary": {
    "number": <int>,
    "dimension": "x" | "y" | "radius" | "angle"
  },
  "secondary": {
    "number": <int>,
    "dimension": "x" | "y" | "radius" | "angle"
  }
}

(3) 2D_LIST
A grid where each row/column has a different number of items.
secondary.number must be an ascending array.
The array length equals the primary.number, and each value represents the number of elements in each group.

Format:
{
  "primary": {
    "number": <int>,
    "dimension": "x" | "y" | "radius" | "angle"
  },
  "secondary": {
    "number": [int, int, ...],
    "dimension": "x" | "y" | "radius" | "angle"
  }
}

3.2 Handling link marks (very important)

If the target mark is a link-type (line, band, area), determine:

Case A. group_type (continuous polyline/curve)
Used for:
- line charts, area charts, radar, band curves...

Properties:
- Require 2D_MATRIX or 2D_LIST.
- Each group = one link. Draw a link-mark through a set of control points.
- the data structure remains the same, but the number of groups equals the number of link marks. Use a group of data points for one link mark and layout the control points for each link mark.
- group_link_direction: 'x' | 'y' | 'radius' | 'angle',
  - 'x' -> link direction is along x dimension
  - 'y' -> link direction is along y dimension
  - 'radius' -> link direction is along radius dimension
  - 'angle' -> link direction is along angle dimension
- is_width_encoded_data: True/False
  - e.g., area chart = True
  - line chart = False

Case B. node_link_type (graph edges)
Properties:
- link_mark_type = 'node_link_type'
- link_number: number of link marks
- source: container ids supplying source nodes
- target: container ids supplying target nodes

Including only one leaf container or template container is allowed, indicating the link marks linking the node marks or intances within this container.

Case C. no_link
If not a link mark:
- link_mark_type = 'no_link'
- group_link_direction = null
- is_width_encoded_data = false

4. Step 2 --- Determine Layout Specification

For each relevant dimension ('x', 'y', 'radius', 'angle'), analyze:

stacking (boolean)
Whether items accumulate along that dimension.

stacking_direction ('min' | 'max' | 'middle')
- 'min' -> align to left/bottom
- 'max' -> align to right/top
- 'middle' -> centered

anchor ('min' | 'max' | 'middle' | 'stacking_decided')
If stacking exists -> anchor = 'stacking_decided'.
Rules:
- If stacking -> use 'stacking_decided'
- If centered -> 'middle'
- If aligned to low end -> 'min'
- If aligned to high end -> 'max'

subdividing (boolean)
True only if stacking fills the entire dimension.

2d_flatten (boolean)
True if groups are flattened (e.g., grouped bar charts).

size_range ([min, max])
Relative to 0-100 units of the dimension.
If all sizes equal -> min = max.

size_uniform (boolean)
True if item sizes along this dimension are uniform.
If true, size_range = [min, max], min = max.

anchor_distribute ('fixed_value' | 'uniform_interval' | 'flexible')
- fixed_value -> anchor_start = constant, anchor_interval = 0, all items have the same anchor position.
- uniform_interval -> specify anchor_start + anchor_interval, all items have the same interval between anchors.
- flexible -> both values null
if fixed_value, anchor_start in 0-100 units of the dimension.
if uniform_interval, anchor_start + anchor_interval * number of items in 0-100 units of the dimension.

source / target
Used only for node-link marks.
A list of container ids that supply source nodes or target nodes.

5. Step 3 --- Determine non_layout_specification

Allowed fields:
- fill
- stroke
- opacity
- stroke_width
- line_type (only for: line, band, area)
- rx, ry (rounded corners, rectangles only)

Each field uses one of the following scales:
- 'fix': fixed value
- 'linear': linear scale
- 'ordinal_primary': ordinal scale with primary domain
- 'ordinal_secondary': ordinal scale with secondary domain
- 'categorical': categorical scale

5.1 Color fields (fill, stroke):
{
  "scale": "...",
  "fix"?: "#RRGGBB",
  "linear"?: ["#RRGGBB", "#RRGGBB"],
  "options"?: ["#RRGGBB", ...]
}.

5.2 Numeric fields (stroke_width, opacity):
{
  "scale": "fix" | "linear" | "ordinal_primary" | "ordinal_secondary" | "categorical",
  "fix"?: number,
  "linear"?: [number, number],
  "options"?: [number, ...]
}

Rules:
- opacity in [0,1]
- stroke_width >= 0

5.3 line_type
Only for:
- line
- band
- area

Values: "curve" | "straight"

5.4 Constraints
- Choose exactly one type of scale.
- Only include keys belonging to the chosen scale.
- Do not emit keys for unused fields.
- Colors must be #RRGGBB.

6. FINAL OUTPUT FORMAT

Return only JSON following:
{
  data_structure: {
    data_type: '1D_LIST' | '2D_MATRIX' | '2D_LIST',
    data_size: {
      primary: {
        number: number,
        dimension: 'x' | 'y' | 'radius' | 'angle' | [dimension],
        explanation: "Explain the reason briefly"
      },
      secondary?: {
        number: number | number[],
        dimension: 'x' | 'y' | 'radius' | 'angle'
      }
    }
  },

  mark_specification: {
    mark_type: 'rectangle' | 'line' | 'circle' | 'arc' | 'band' | 'area' | 'text',
    is_link_mark: boolean,
    link_mark_type: 'group_type' | 'node_link_type' | 'no_link',
    group_link_direction?: 'x' | 'y' | 'radius' | 'angle',
    link_number?: number,
    node_use_once: boolean,
    is_width_encoded_data: boolean,
    is_fully_connected: boolean,
    is_bipartite: boolean
  },

  layout_specification: {
    [dimension in 'x', 'y', 'radius', 'angle']: {
      stacking: boolean,
      stacking_direction: 'min' | 'max' | 'middle',
      anchor: 'min' | 'max' | 'middle' | 'stacking_decided',
      subdividing: boolean,
      2d_flatten: boolean,
      size_uniform: boolean,
      size_range: [number, number],
      anchor_distribute: 'fixed_value' | 'uniform_interval' | 'flexible',
      anchor_interval: number | null,
      anchor_start: number | null
    },
    source?: string[],
    target?: string[]
  },

  non_layout_specification: {
    line_type?: 'curve' | 'straight',
    stroke_width?: NumericEncoding,
    opacity?: NumericEncoding,
    fill?: ColorEncoding,
    stroke?: ColorEncoding,
    rx?: NumericEncoding,
    ry?: NumericEncoding
  }
}
"""

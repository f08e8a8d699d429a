# Services: distribution algebra, SOP evaluation, simulation, reports
